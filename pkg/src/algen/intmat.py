"""Integer matrix kernels: Hermite and Smith normal forms, CRT, factoring.

Everything here is exact and canonical.  Canonicality is load-bearing:
subgroup equality must be representation equality, so closure loops can
detect a fixed point by comparing forms, and certificates stay byte-stable
across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .fields import QQ, is_prime
from .linalg import RowReducer


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# Hermite normal form (row basis for a subgroup of Z^m)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerLattice:
    """A subgroup of Z^ambient in canonical Hermite normal form.

    Basis rows have strictly increasing pivot columns, positive pivots, and
    every entry above a pivot is reduced into [0, pivot).  Two equal
    subgroups produce identical row tuples.
    """

    ambient: int
    rows: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Euclidean residual of v against the basis (floor division)."""
        if len(v) != self.ambient:
            raise ValueError(f"vector length {len(v)} != ambient {self.ambient}")
        work = [int(x) for x in v]
        for row, c in zip(self.rows, self.pivots):
            q = work[c] // row[c]
            if q:
                for k in range(c, self.ambient):
                    work[k] -= q * row[k]
        return tuple(work)

    def contains(self, v: Sequence[int]) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def is_full(self) -> bool:
        """True iff the subgroup is all of Z^ambient."""
        return self.rank == self.ambient and all(
            row[c] == 1 for row, c in zip(self.rows, self.pivots)
        )

    def column_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Generator matrix with the basis as columns (transpose of rows)."""
        return tuple(zip(*self.rows)) if self.rows else ()


def _hnf_rows(vectors: Iterable[Sequence[int]], ambient: int):
    """Row-style HNF of the subgroup generated by the given vectors."""
    work = []
    for v in vectors:
        row = [int(x) for x in v]
        if len(row) != ambient:
            raise ValueError(f"vector length {len(row)} != ambient {ambient}")
        if any(row):
            work.append(row)
    basis: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ambient):
        pivot_row = None
        for row in work:
            if row[c] == 0:
                continue
            if pivot_row is None:
                pivot_row = row
                continue
            g, x, y = xgcd(pivot_row[c], row[c])
            qa, qb = pivot_row[c] // g, row[c] // g
            merged = [x * a + y * b for a, b in zip(pivot_row, row)]
            row[:] = [qa * b - qb * a for a, b in zip(pivot_row, row)]
            pivot_row[:] = merged
        if pivot_row is not None:
            work = [row for row in work if row is not pivot_row]
            if pivot_row[c] < 0:
                pivot_row[:] = [-x for x in pivot_row]
            basis.append(pivot_row)
            pivots.append(c)
        work = [row for row in work if any(row)]
    # reduce entries above each pivot into [0, pivot)
    for i in range(len(basis)):
        c = pivots[i]
        p = basis[i][c]
        for j in range(i):
            q = basis[j][c] // p
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return basis, pivots


def lattice_from_vectors(vectors: Iterable[Sequence[int]], ambient: int) -> IntegerLattice:
    """Canonical lattice generated (as a subgroup of Z^ambient) by vectors."""
    basis, pivots = _hnf_rows(vectors, ambient)
    return IntegerLattice(
        ambient=ambient,
        rows=tuple(tuple(r) for r in basis),
        pivots=tuple(pivots),
    )


def hnf(matrix: Sequence[Sequence[int]]) -> IntegerLattice:
    """Canonical form of the subgroup of Z^m spanned by the matrix columns."""
    rows = [list(map(int, r)) for r in matrix]
    m = len(rows)
    if m == 0:
        return lattice_from_vectors([], 0)
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError("ragged matrix")
    return lattice_from_vectors(list(zip(*rows)), m)


def full_lattice(ambient: int) -> IntegerLattice:
    eye = tuple(tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient))
    return IntegerLattice(ambient=ambient, rows=eye, pivots=tuple(range(ambient)))


# ---------------------------------------------------------------------------
# Smith normal form with unimodular transforms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """U A V = diag(d_1..d_k) embedded in the m x n shape.

    d_1 | d_2 | ... | d_k, all nonnegative, zeros last; U (m x m) and
    V (n x n) are unimodular.
    """

    shape: tuple[int, int]
    diag: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by repeated pivot reduction (Cohen Alg. 2.4.14 style)."""
    A = [list(map(int, r)) for r in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if m and any(len(r) != n for r in A):
        raise ValueError("ragged matrix")
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_sub(i, j, q):
        # row i -= q * row j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):
        # col i -= q * col j
        for row in A:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    end = min(m, n)
    while t < end:
        # locate the smallest nonzero entry of the trailing block
        pos = None
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                a = abs(A[i][j])
                if a and (pos is None or a < best):
                    pos, best = (i, j), a
        if pos is None:
            break
        if pos[0] != t:
            swap_rows(t, pos[0])
        if pos[1] != t:
            swap_cols(t, pos[1])
        if A[t][t] < 0:
            negate_row(t)
        clean = True
        for i in range(t + 1, m):
            if A[i][t]:
                q = A[i][t] // A[t][t]
                row_sub(i, t, q)
                if A[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if A[t][j]:
                q = A[t][j] // A[t][t]
                col_sub(j, t, q)
                if A[t][j]:
                    clean = False
        if not clean:
            continue  # a smaller remainder appeared; re-select the pivot
        # pivot must divide every remaining entry, else absorb the bad row
        bad = None
        d = A[t][t]
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % d:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_sub(t, bad, -1)  # row t += row bad
            continue
        t += 1

    diag = tuple(A[i][i] for i in range(end))
    return SmithDecomposition(
        shape=(m, n),
        diag=diag,
        left=tuple(tuple(r) for r in U),
        right=tuple(tuple(r) for r in V),
    )


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [list(map(int, r)) for r in matrix]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def invert_unimodular(matrix: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(matrix)
    reducer = RowReducer(QQ, 2 * n)
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValueError("ragged matrix")
        aug = [Fraction(x) for x in row] + [Fraction(1 if j == i else 0) for j in range(n)]
        reducer.insert(aug)
    if reducer.dim != n or reducer.pivots != list(range(n)):
        raise ValueError("matrix is singular")
    inv = []
    for row in reducer.rows:
        ints = []
        for x in row[n:]:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            ints.append(x.numerator)
        inv.append(tuple(ints))
    return tuple(inv)


def matmul_int(a, b) -> tuple[tuple[int, ...], ...]:
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


# ---------------------------------------------------------------------------
# Chinese remainder theorem
# ---------------------------------------------------------------------------


def crt(residues: Iterable[tuple[int, int]]) -> int:
    """Smallest nonnegative x with x = r (mod m) for every (m, r) pair.

    Moduli need not be coprime; inconsistent congruences raise ValueError.
    An empty list yields 0.
    """
    x, modulus = 0, 1
    for m, r in residues:
        m = int(m)
        r = int(r)
        if m <= 0:
            raise ValueError(f"modulus must be positive, got {m}")
        g, s, _ = xgcd(modulus, m)
        if (r - x) % g:
            raise ValueError(f"inconsistent congruences: x={x} mod {modulus} vs {r} mod {m}")
        lcm = modulus // g * m
        x = (x + (r - x) // g * s % (m // g) * modulus) % lcm
        modulus = lcm
    return x


# ---------------------------------------------------------------------------
# Factoring: trial division, deterministic Miller-Rabin, Brent's rho
# ---------------------------------------------------------------------------


class FactorizationIncomplete(RuntimeError):
    """Raised when a computation needs a factorization that was not achieved."""

    def __init__(self, n: int, primes: tuple[int, ...], cofactor: int):
        self.n = n
        self.primes = primes
        self.cofactor = cofactor
        super().__init__(f"could not factor cofactor {cofactor} of {n}")


@dataclass(frozen=True)
class Factorization:
    """Prime factors (with multiplicity, ascending) and the unfactored part."""

    n: int
    primes: tuple[int, ...]
    cofactor: int

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.primes)))


# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def proved_prime(n: int) -> bool | None:
    """True/False when primality is decided; None when out of proven range."""
    if n < 2:
        return False
    if n < 1 << 20:
        return is_prime(n)
    if n >= _MR_LIMIT:
        return None
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int | None:
    """Deterministic Brent cycle-finding; returns a proper factor or None."""
    if n % 2 == 0:
        return 2
    for c in range(1, 21):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        count = 0
        while g == 1 and count < (1 << 20):
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
            count += r
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor(n: int, bound: int = 1_000_000) -> Factorization:
    """Factor n by trial division up to bound, then deterministic rho splits.

    Factors are reported only when proven prime; whatever resists ends up in
    the cofactor (complete iff cofactor == 1).
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    remaining = abs(n)
    primes: list[int] = []
    if remaining > 1:
        for f in range(2, 4):
            while remaining % f == 0:
                primes.append(f)
                remaining //= f
        f = 5
        step = 2
        while f <= bound and f * f <= remaining:
            while remaining % f == 0:
                primes.append(f)
                remaining //= f
            f += step
            step = 6 - step
        if remaining > 1 and f * f > remaining:
            # every candidate up to sqrt(remaining) was tried
            primes.append(remaining)
            remaining = 1
    cofactor = 1
    stack = [remaining] if remaining > 1 else []
    while stack:
        v = stack.pop()
        verdict = proved_prime(v)
        if verdict is True:
            primes.append(v)
            continue
        if verdict is None:
            cofactor *= v
            continue
        d = _brent_rho(v)
        if d is None:
            cofactor *= v
            continue
        stack.append(d)
        stack.append(v // d)
    return Factorization(n=n, primes=tuple(sorted(primes)), cofactor=cofactor)
