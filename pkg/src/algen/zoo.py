"""Constructors for the standard algebra families, with generator tuples.

Families: zero-product modules, full matrix algebras Mat_n, split etale
algebras F^n and their non-split forms F_p[x]/(f), Cayley-Dickson doublings
(quaternions, split octonions), the 27-dimensional Albert algebra of
octonion-Hermitian 3x3 matrices under the Jordan product, and finite
products.  Each constructor fixes a basis and emits exact structure
constants; generator tuples come with the construction where a closed form
exists, and by seeded search for the Albert algebra.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Element, Multialgebra, OperationTensor, make_tensor
from .fields import Field, GF, QQ, Scalar


def _scale(field: Field, c: Scalar, v: Sequence[Scalar]) -> tuple:
    return tuple(field.mul(c, x) for x in v)


def _add_vec(field: Field, u, v) -> tuple:
    return tuple(field.add(x, y) for x, y in zip(u, v))


# ---------------------------------------------------------------------------
# Matrix algebras
# ---------------------------------------------------------------------------


def matrix_algebra(field: Field, n: int) -> Multialgebra:
    """Mat_n over the field, basis E_{i,j} at index i*n + j (row-major).

    E_{i,j} E_{k,l} = delta_{jk} E_{i,l}.  The identity is flagged as unit.
    For n = 2 the algebra carries its symplectic involution
    [[a,b],[c,d]] -> [[d,-b],[-c,a]] (the conjugation used by the
    Cayley-Dickson doubling); other sizes have no designated involution.
    """
    if n < 1:
        raise ValueError("matrix algebra needs n >= 1")
    dim = n * n

    def e(i, j):
        return i * n + j

    product = make_tensor(
        field,
        dim,
        2,
        (((e(i, j), e(j, l)), e(i, l), 1) for i in range(n) for j in range(n) for l in range(n)),
    )
    unit = make_tensor(field, dim, 0, (((), e(i, i), 1) for i in range(n)))
    ops = [product, unit]
    involution_index = None
    if n == 2:
        conj = [
            ((e(0, 0),), e(1, 1), 1),
            ((e(1, 1),), e(0, 0), 1),
            ((e(0, 1),), e(0, 1), -1),
            ((e(1, 0),), e(1, 0), -1),
        ]
        ops.append(make_tensor(field, dim, 1, conj))
        involution_index = 2
    return Multialgebra(
        field=field,
        dim=dim,
        ops=tuple(ops),
        product_index=0,
        unit_index=1,
        involution_index=involution_index,
    )


def canonical_matrix_generators(field: Field, n: int) -> tuple[Element, Element]:
    """The pair (E_{1,1}, E_{1,2} + E_{2,3} + ... + E_{n-1,n} + E_{n,1})."""
    if n < 1:
        raise ValueError("matrix algebra needs n >= 1")
    dim = n * n
    first = tuple(field.one if k == 0 else field.zero for k in range(dim))
    cyc = [field.zero] * dim
    for i in range(n - 1):
        cyc[i * n + (i + 1)] = field.one
    cyc[(n - 1) * n + 0] = field.add(cyc[(n - 1) * n + 0], field.one)
    return first, tuple(cyc)


# ---------------------------------------------------------------------------
# Zero-product and split etale algebras
# ---------------------------------------------------------------------------


def zero_algebra(field: Field, r: int) -> Multialgebra:
    """Module with identically zero product; closure equals linear span."""
    if r < 0:
        raise ValueError("dimension must be nonnegative")
    product = OperationTensor(arity=2, entries=())
    return Multialgebra(field=field, dim=r, ops=(product,), product_index=0)


def split_etale(field: Field, n: int) -> Multialgebra:
    """F^n with componentwise product; the all-ones vector is the unit."""
    if n < 0:
        raise ValueError("rank must be nonnegative")
    product = make_tensor(field, n, 2, (((i, i), i, 1) for i in range(n)))
    unit = make_tensor(field, n, 0, (((), i, 1) for i in range(n)))
    return Multialgebra(field=field, dim=n, ops=(product, unit), product_index=0, unit_index=1)


def distinct_entries_generator(field: Field, n: int) -> Element:
    """The element (1, 2, ..., n) of split_etale(field, n).

    Entries must be pairwise distinct and nonzero in the field for the
    element to generate non-unitally, so a prime field needs n <= p - 1.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    order = field.order
    if order is not None and n > order - 1:
        raise ValueError(
            f"no element with {n} distinct nonzero entries exists over a field of order {order}"
        )
    return tuple(field.coerce(i) for i in range(1, n + 1))


def etale_logq_generators(p: int, n: int, unital: bool = False) -> list[Element]:
    """Generators of split_etale(F_p, n) of the minimal length.

    k is the least integer with p^k >= n + 1 (non-unital) or p^k >= n
    (unital).  Element m holds the m-th base-p digit of j (non-unital) or of
    j - 1 (unital) in coordinate j - 1, so the per-coordinate digit columns
    are pairwise distinct, and nonzero in the non-unital case.
    """
    field = GF(p)
    if n < 1:
        raise ValueError("need n >= 1")
    target = n + 1 if not unital else n
    k = 0
    while p**k < target:
        k += 1
    elements = []
    for m in range(k):
        coords = []
        for j in range(1, n + 1):
            label = j if not unital else j - 1
            coords.append((label // p**m) % p)
        elements.append(tuple(field.coerce(c) for c in coords))
    return elements


# ---------------------------------------------------------------------------
# Field extensions as non-split etale forms
# ---------------------------------------------------------------------------


def _poly_trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_rem(p: int, num: list[int], den: list[int]) -> list[int]:
    """Remainder of num modulo den over F_p; coefficients ascending, den monic."""
    num = [c % p for c in num]
    d = len(den) - 1
    while len(num) - 1 >= d and any(num):
        lead = num[-1]
        if lead:
            shift = len(num) - 1 - d
            for i, c in enumerate(den):
                num[shift + i] = (num[shift + i] - lead * c) % p
        _poly_trim(num)
        if not num:
            break
    return num


def _is_irreducible(p: int, coeffs: list[int]) -> bool:
    d = len(coeffs) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=e):
            g = list(tail) + [1]  # monic of degree e
            if not _poly_rem(p, coeffs, g):
                return False
    return True


def field_extension_etale(p: int, poly: Sequence[int]) -> Multialgebra:
    """F_p[x]/(poly) with basis 1, x, ..., x^{deg-1}; poly monic irreducible.

    Coefficients ascend: poly = [c_0, c_1, ..., 1].  Irreducibility is
    checked by exhaustive trial division over all lower-degree monic factors.
    """
    field = GF(p)
    coeffs = [c % p for c in poly]
    if len(coeffs) < 2 or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic of degree >= 1")
    if not _is_irreducible(p, coeffs):
        raise ValueError("polynomial is reducible")
    d = len(coeffs) - 1
    # x^e mod poly for e up to 2d - 2
    powers: list[list[int]] = []
    for e in range(2 * d - 1):
        vec = [0] * (e + 1)
        vec[e] = 1
        rem = _poly_rem(p, vec, coeffs)
        powers.append(rem + [0] * (d - len(rem)))
    triples = []
    for i in range(d):
        for j in range(d):
            for l, c in enumerate(powers[i + j]):
                if c:
                    triples.append(((i, j), l, c))
    product = make_tensor(field, d, 2, triples)
    unit = make_tensor(field, d, 0, [((), 0, 1)])
    return Multialgebra(field=field, dim=d, ops=(product, unit), product_index=0, unit_index=1)


# ---------------------------------------------------------------------------
# Cayley-Dickson doubling
# ---------------------------------------------------------------------------


def ground_algebra(field: Field) -> Multialgebra:
    """The field itself: 1-dimensional, unital, identity involution."""
    product = make_tensor(field, 1, 2, [((0, 0), 0, 1)])
    unit = make_tensor(field, 1, 0, [((), 0, 1)])
    conj = make_tensor(field, 1, 1, [((0,), 0, 1)])
    return Multialgebra(
        field=field, dim=1, ops=(product, unit, conj), product_index=0, unit_index=1, involution_index=2
    )


def cayley_dickson(alg: Multialgebra, mu) -> Multialgebra:
    """Double a unital algebra with involution.

    On pairs: (a,b)(c,d) = (ac + mu conj(d) b, da + b conj(c)); unit (e,0);
    involution (a,b) -> (conj(a), -b).  The doubled algebra keeps all three
    designations, and its construction re-runs the unit/involution law checks.
    """
    if alg.unit_index is None or alg.involution_index is None:
        raise ValueError("Cayley-Dickson input needs designated unit and involution")
    field = alg.field
    mu = field.coerce(mu)
    if mu == field.zero:
        raise ValueError("Cayley-Dickson scalar must be nonzero")
    r = alg.dim
    basis = [tuple(field.one if k == i else field.zero for k in range(r)) for i in range(r)]
    conj = [alg.involution(b) for b in basis]

    triples = []
    for i in range(r):
        for k in range(r):
            # (e_i, 0)(e_k, 0) = (e_i e_k, 0)
            v = alg.product(basis[i], basis[k])
            triples.extend(((i, k), l, c) for l, c in enumerate(v) if c != field.zero)
            # (e_i, 0)(0, e_k) = (0, e_k e_i)
            v = alg.product(basis[k], basis[i])
            triples.extend(((i, r + k), r + l, c) for l, c in enumerate(v) if c != field.zero)
            # (0, e_i)(e_k, 0) = (0, e_i conj(e_k))
            v = alg.product(basis[i], conj[k])
            triples.extend(((r + i, k), r + l, c) for l, c in enumerate(v) if c != field.zero)
            # (0, e_i)(0, e_k) = (mu conj(e_k) e_i, 0)
            v = _scale(field, mu, alg.product(conj[k], basis[i]))
            triples.extend(((r + i, r + k), l, c) for l, c in enumerate(v) if c != field.zero)
    product = make_tensor(field, 2 * r, 2, triples)

    e = alg.unit_vector()
    unit = make_tensor(field, 2 * r, 0, (((), l, c) for l, c in enumerate(e) if c != field.zero))

    inv_triples = []
    for i in range(r):
        inv_triples.extend(((i,), l, c) for l, c in enumerate(conj[i]) if c != field.zero)
        inv_triples.append(((r + i,), r + i, -1))
    involution = make_tensor(field, 2 * r, 1, inv_triples)

    return Multialgebra(
        field=field,
        dim=2 * r,
        ops=(product, unit, involution),
        product_index=0,
        unit_index=1,
        involution_index=2,
    )


def quaternion_algebra(field: Field = QQ) -> Multialgebra:
    """Two doublings from the ground field with mu = -1, -1."""
    return cayley_dickson(cayley_dickson(ground_algebra(field), -1), -1)


def split_octonion(field: Field) -> Multialgebra:
    """The 8-dimensional CD(Mat_2(field), 1)."""
    return cayley_dickson(matrix_algebra(field, 2), 1)


def octonion_generators(field: Field) -> tuple[Element, Element, Element]:
    """(g1, 0), (g2, 0) for the canonical Mat_2 pair, plus (0, identity)."""
    g1, g2 = canonical_matrix_generators(field, 2)
    zero4 = (field.zero,) * 4
    unit2 = matrix_algebra(field, 2).unit_vector()
    return (g1 + zero4, g2 + zero4, zero4 + unit2)


# ---------------------------------------------------------------------------
# Albert algebra
# ---------------------------------------------------------------------------


class _ProductTable:
    """Bilinear product on small vectors via a precomputed basis table."""

    def __init__(self, alg: Multialgebra, op_index: int):
        self.field = alg.field
        self.dim = alg.dim
        basis = [
            tuple(alg.field.one if k == i else alg.field.zero for k in range(alg.dim))
            for i in range(alg.dim)
        ]
        self.table = [[alg.evaluate(op_index, (basis[i], basis[j])) for j in range(alg.dim)] for i in range(alg.dim)]

    def mul(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
        field = self.field
        zero = field.zero
        out = [zero] * self.dim
        for i, x in enumerate(u):
            if x == zero:
                continue
            row = self.table[i]
            for j, y in enumerate(v):
                if y == zero:
                    continue
                c = field.mul(x, y)
                for l, t in enumerate(row[j]):
                    if t != zero:
                        out[l] = field.add(out[l], field.mul(c, t))
        return tuple(out)


def albert(field: Field) -> Multialgebra:
    """Hermitian 3x3 matrices over the split octonions with Jordan product.

    Coordinates: 3 diagonal scalars, then the octonion entries at positions
    (1,2), (1,3), (2,3), giving 3 + 3*8 = 27.  The product is
    x o y = (xy + yx)/2, with the structure tensor synthesized from the
    octonion tensor by expanding the Hermitian matrix product on basis
    pairs.  Requires characteristic != 2.
    """
    if field.char == 2:
        raise ValueError("Albert algebra needs characteristic != 2")
    oct_alg = split_octonion(field)
    mul = _ProductTable(oct_alg, oct_alg.product_index)
    conj_table = [
        oct_alg.involution(tuple(field.one if k == i else field.zero for k in range(8)))
        for i in range(8)
    ]
    unit_o = oct_alg.unit_vector()
    zero_o = (field.zero,) * 8
    half = field.inv(field.coerce(2))

    def conj(v):
        out = [field.zero] * 8
        for i, x in enumerate(v):
            if x != field.zero:
                for l, c in enumerate(conj_table[i]):
                    if c != field.zero:
                        out[l] = field.add(out[l], field.mul(x, c))
        return tuple(out)

    offs = ((0, 1), (0, 2), (1, 2))

    def to_matrix(v27):
        m = [[zero_o] * 3 for _ in range(3)]
        for i in range(3):
            m[i][i] = _scale(field, v27[i], unit_o)
        for slot, (i, j) in enumerate(offs):
            entry = tuple(v27[3 + 8 * slot + t] for t in range(8))
            m[i][j] = entry
            m[j][i] = conj(entry)
        return m

    def from_matrix(m):
        coords = []
        for i in range(3):
            alpha = m[i][i][0]
            if m[i][i] != _scale(field, alpha, unit_o):
                raise AssertionError("diagonal entry is not scalar")
            coords.append(alpha)
        for slot, (i, j) in enumerate(offs):
            if m[j][i] != conj(m[i][j]):
                raise AssertionError("matrix is not Hermitian")
            coords.extend(m[i][j])
        return coords

    def matmul(x, y):
        out = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                acc = zero_o
                for k in range(3):
                    if any(c != field.zero for c in x[i][k]) and any(c != field.zero for c in y[k][j]):
                        acc = _add_vec(field, acc, mul.mul(x[i][k], y[k][j]))
                out[i][j] = acc
        return out

    def basis27(a):
        v = [field.zero] * 27
        v[a] = field.one
        return v

    triples = []
    mats = [to_matrix(basis27(a)) for a in range(27)]
    for a in range(27):
        for b in range(a, 27):
            xy = matmul(mats[a], mats[b])
            yx = matmul(mats[b], mats[a])
            sym = [
                [_scale(field, half, _add_vec(field, xy[i][j], yx[i][j])) for j in range(3)]
                for i in range(3)
            ]
            w = from_matrix(sym)
            for l, c in enumerate(w):
                if c != field.zero:
                    triples.append(((a, b), l, c))
                    if a != b:
                        triples.append(((b, a), l, c))
    product = make_tensor(field, 27, 2, triples)
    unit = make_tensor(field, 27, 0, [((), i, 1) for i in range(3)])
    return Multialgebra(field=field, dim=27, ops=(product, unit), product_index=0, unit_index=1)


def albert_generators(field: Field, budget=None) -> tuple[Element, ...]:
    """A generating triple found by a seeded random probe (deterministic)."""
    from .search import SearchBudget, random_probe

    alg = albert(field)
    cert = random_probe(alg, 3, budget or SearchBudget())
    if cert is None:
        raise RuntimeError("no generating triple found within budget")
    return cert.elements


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def product_algebra(a: Multialgebra, b: Multialgebra) -> Multialgebra:
    """Componentwise structure on A + B.

    The designated products always combine; the unit/involution combine when
    both inputs carry them.  Operations beyond the designated ones have no
    canonical pairing and are rejected.
    """
    if a.field != b.field:
        raise ValueError("product of algebras over different fields")
    field = a.field
    for alg in (a, b):
        designated = {alg.product_index, alg.unit_index, alg.involution_index}
        if set(range(len(alg.ops))) - designated:
            raise ValueError("cannot combine algebras with undesignated operations")
    ra = a.dim
    dim = a.dim + b.dim

    def shifted(op: OperationTensor, offset: int):
        for idx, outs in op.entries:
            for l, c in outs:
                yield tuple(i + offset for i in idx), l + offset, c

    ops = []
    product_triples = list(shifted(a.ops[a.product_index], 0))
    product_triples += list(shifted(b.ops[b.product_index], ra))
    ops.append(make_tensor(field, dim, 2, product_triples))
    unit_index = None
    if a.unit_index is not None and b.unit_index is not None:
        unit_triples = list(shifted(a.ops[a.unit_index], 0)) + list(
            shifted(b.ops[b.unit_index], ra)
        )
        ops.append(make_tensor(field, dim, 0, unit_triples))
        unit_index = len(ops) - 1
    involution_index = None
    if a.involution_index is not None and b.involution_index is not None:
        inv_triples = list(shifted(a.ops[a.involution_index], 0)) + list(
            shifted(b.ops[b.involution_index], ra)
        )
        ops.append(make_tensor(field, dim, 1, inv_triples))
        involution_index = len(ops) - 1
    return Multialgebra(
        field=field,
        dim=dim,
        ops=tuple(ops),
        product_index=0,
        unit_index=unit_index,
        involution_index=involution_index,
    )
