"""Structure-constant multialgebras over an exact field.

An algebra of dimension r is a list of sparse multilinear operation tensors:
an arity-k tensor maps basis index tuples (i_1,...,i_k) to output vectors,
and extends to A^k -> A multilinearly.  Exactly one binary tensor is flagged
as the product; an arity-0 constant may be flagged as the unit and an
arity-1 tensor as an involution.  Because every operation is multilinear,
the subalgebra generated by a set is computed by closing its span under
operation values on basis tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .fields import GF, QQ, Field, Scalar, validate_vector
from .linalg import EchelonBasis, RowReducer

Element = tuple[Scalar, ...]


@dataclass(frozen=True)
class OperationTensor:
    """Sparse k-multilinear map on basis indices.

    entries maps are stored canonically: index tuples ascending, and for each
    index tuple the (output index, coefficient) pairs ascending with zero
    coefficients dropped.  Arity 0 encodes a constant vector under the empty
    index tuple.
    """

    arity: int
    entries: tuple[tuple[tuple[int, ...], tuple[tuple[int, Scalar], ...]], ...]


def make_tensor(
    field: Field,
    dim: int,
    arity: int,
    triples: Iterable[tuple[Sequence[int], int, object]],
) -> OperationTensor:
    """Build a canonical tensor from (index tuple, output index, coefficient) triples."""
    if arity < 0:
        raise ValueError("arity must be nonnegative")
    acc: dict[tuple[int, ...], dict[int, Scalar]] = {}
    for idx, out, coeff in triples:
        idx = tuple(int(i) for i in idx)
        if len(idx) != arity:
            raise ValueError(f"index tuple {idx} does not match arity {arity}")
        if any(not 0 <= i < dim for i in idx) or not 0 <= int(out) < dim:
            raise ValueError(f"tensor index out of range for dimension {dim}")
        row = acc.setdefault(idx, {})
        out = int(out)
        row[out] = field.add(row.get(out, field.zero), field.coerce(coeff))
    entries = []
    for idx in sorted(acc):
        outs = tuple((l, c) for l, c in sorted(acc[idx].items()) if c != field.zero)
        if outs:
            entries.append((idx, outs))
    return OperationTensor(arity=arity, entries=tuple(entries))


def _basis_vector(field: Field, dim: int, i: int) -> Element:
    return tuple(field.one if j == i else field.zero for j in range(dim))


def _eval_tensor(op: OperationTensor, field: Field, dim: int, args) -> list:
    """Multilinear extension of the tensor applied to coordinate vectors."""
    zero = field.zero
    mul, add = field.mul, field.add
    out = [zero] * dim
    for idx, outs in op.entries:
        c = field.one
        for slot, i in enumerate(idx):
            x = args[slot][i]
            if x == zero:
                c = zero
                break
            c = mul(c, x)
        if c != zero:
            for l, coeff in outs:
                out[l] = add(out[l], mul(c, coeff))
    return out


@dataclass(frozen=True)
class Multialgebra:
    """Finite-dimensional algebra given by structure constants.

    Immutable; construction validates index ranges, the designated-product
    arity, and (when flagged) the unit and involution laws on basis tuples,
    which suffices by multilinearity.
    """

    field: Field
    dim: int
    ops: tuple[OperationTensor, ...]
    product_index: int
    unit_index: Optional[int] = None
    involution_index: Optional[int] = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if not 0 <= self.product_index < len(self.ops):
            raise ValueError("product index out of range")
        if self.ops[self.product_index].arity != 2:
            raise ValueError("designated product must have arity 2")
        if self.unit_index is not None:
            if not 0 <= self.unit_index < len(self.ops):
                raise ValueError("unit index out of range")
            if self.ops[self.unit_index].arity != 0:
                raise ValueError("designated unit must have arity 0")
            self._check_unit()
        if self.involution_index is not None:
            if not 0 <= self.involution_index < len(self.ops):
                raise ValueError("involution index out of range")
            if self.ops[self.involution_index].arity != 1:
                raise ValueError("designated involution must have arity 1")
            self._check_involution()

    # -- evaluation --------------------------------------------------------

    def evaluate(self, op_index: int, args: Sequence[Sequence[Scalar]]) -> Element:
        if not 0 <= op_index < len(self.ops):
            raise ValueError(f"no operation {op_index}")
        op = self.ops[op_index]
        if len(args) != op.arity:
            raise ValueError(f"operation {op_index} has arity {op.arity}, got {len(args)} arguments")
        vetted = [validate_vector(self.field, a, self.dim) for a in args]
        return tuple(_eval_tensor(op, self.field, self.dim, vetted))

    def product(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Element:
        return self.evaluate(self.product_index, (x, y))

    def unit_vector(self) -> Element:
        if self.unit_index is None:
            raise ValueError("algebra has no designated unit")
        return tuple(_eval_tensor(self.ops[self.unit_index], self.field, self.dim, ()))

    def involution(self, x: Sequence[Scalar]) -> Element:
        if self.involution_index is None:
            raise ValueError("algebra has no designated involution")
        return self.evaluate(self.involution_index, (x,))

    def constants(self) -> list[Element]:
        """Values of all arity-0 operations."""
        return [
            tuple(_eval_tensor(op, self.field, self.dim, ()))
            for op in self.ops
            if op.arity == 0
        ]

    # -- law checks (constructor-time) ---------------------------------------

    def _check_unit(self):
        e = tuple(_eval_tensor(self.ops[self.unit_index], self.field, self.dim, ()))
        prod = self.ops[self.product_index]
        for i in range(self.dim):
            b = _basis_vector(self.field, self.dim, i)
            left = tuple(_eval_tensor(prod, self.field, self.dim, (e, b)))
            right = tuple(_eval_tensor(prod, self.field, self.dim, (b, e)))
            if left != b or right != b:
                raise ValueError("designated unit fails the unit law")

    def _check_involution(self):
        sigma = self.ops[self.involution_index]
        prod = self.ops[self.product_index]
        images = [
            tuple(_eval_tensor(sigma, self.field, self.dim, (_basis_vector(self.field, self.dim, i),)))
            for i in range(self.dim)
        ]
        for i in range(self.dim):
            twice = tuple(_eval_tensor(sigma, self.field, self.dim, (images[i],)))
            if twice != _basis_vector(self.field, self.dim, i):
                raise ValueError("designated involution is not an involution")
        for i in range(self.dim):
            bi = _basis_vector(self.field, self.dim, i)
            for j in range(self.dim):
                bj = _basis_vector(self.field, self.dim, j)
                lhs = tuple(
                    _eval_tensor(
                        sigma,
                        self.field,
                        self.dim,
                        (tuple(_eval_tensor(prod, self.field, self.dim, (bi, bj))),),
                    )
                )
                rhs = tuple(_eval_tensor(prod, self.field, self.dim, (images[j], images[i])))
                if lhs != rhs:
                    raise ValueError("designated involution is not an anti-automorphism")


# ---------------------------------------------------------------------------
# Subalgebra closure and generation
# ---------------------------------------------------------------------------


def _closure_reducer(alg: Multialgebra, rows: Sequence[Element], unital: bool) -> tuple[RowReducer, int]:
    """Close the span of rows under all operations; returns (reducer, monomial count).

    Rounds evaluate every positive-arity operation on all tuples of the
    current canonical basis (lexicographic order); by multilinearity this is
    sufficient.  Each round either grows the dimension or is the fixpoint,
    so at most dim enlargement rounds run.
    """
    field = alg.field
    r = alg.dim
    reducer = RowReducer(field, r)
    for v in rows:
        reducer.insert(v)
    if unital:
        for const in alg.constants():
            reducer.insert(const)
    monomials = 0
    if reducer.dim == r:
        return reducer, monomials
    while True:
        basis_rows = [tuple(row) for row in reducer.rows]
        grew = False
        for op in alg.ops:
            if op.arity == 0 or not op.entries:
                continue
            for args in itertools.product(basis_rows, repeat=op.arity):
                value = _eval_tensor(op, field, r, args)
                if reducer.insert(value):
                    monomials += 1
                    grew = True
                    if reducer.dim == r:
                        return reducer, monomials
        if not grew:
            return reducer, monomials


@dataclass(frozen=True)
class GenerationCertificate:
    """Replayable record that a tuple was tested for generation."""

    elements: tuple[Element, ...]
    closure_dim: int
    ambient_dim: int
    unital: bool
    monomial_count: int
    method: str = "explicit"
    seed: Optional[int] = None
    trial: Optional[int] = None
    index: Optional[int] = None

    @property
    def generates(self) -> bool:
        return self.closure_dim == self.ambient_dim


def closure(alg: Multialgebra, seed: Iterable[Sequence[Scalar]], unital: bool = False) -> EchelonBasis:
    """Canonical basis of the smallest subalgebra containing the seed.

    With unital set, all arity-0 constants are adjoined; without it they are
    excluded and the non-unital subalgebra is computed.
    """
    rows = [validate_vector(alg.field, v, alg.dim) for v in seed]
    reducer, _ = _closure_reducer(alg, rows, unital)
    return reducer.snapshot()


def is_generating(
    alg: Multialgebra,
    elements: Iterable[Sequence[Scalar]],
    unital: bool = False,
    method: str = "explicit",
    seed: Optional[int] = None,
    trial: Optional[int] = None,
    index: Optional[int] = None,
) -> tuple[bool, GenerationCertificate]:
    """Decide whether the tuple generates; always returns a certificate."""
    rows = tuple(validate_vector(alg.field, v, alg.dim) for v in elements)
    reducer, monomials = _closure_reducer(alg, rows, unital)
    cert = GenerationCertificate(
        elements=rows,
        closure_dim=reducer.dim,
        ambient_dim=alg.dim,
        unital=unital,
        monomial_count=monomials,
        method=method,
        seed=seed,
        trial=trial,
        index=index,
    )
    return reducer.dim == alg.dim, cert


def replay_certificate(alg: Multialgebra, cert: GenerationCertificate) -> bool:
    """Recompute the closure recorded in a certificate and compare."""
    if cert.ambient_dim != alg.dim:
        return False
    try:
        rows = tuple(validate_vector(alg.field, v, alg.dim) for v in cert.elements)
    except ValueError:
        return False
    reducer, monomials = _closure_reducer(alg, rows, cert.unital)
    return reducer.dim == cert.closure_dim and monomials == cert.monomial_count


# ---------------------------------------------------------------------------
# Reduction mod p of a rational algebra
# ---------------------------------------------------------------------------


def reduce_mod_p(alg: Multialgebra, p: int) -> Multialgebra:
    """The same structure constants over F_p; all entries must be p-integral."""
    if alg.field != QQ:
        raise ValueError("reduce_mod_p expects an algebra over Q")
    target = GF(p)
    ops = []
    for op in alg.ops:
        triples = []
        for idx, outs in op.entries:
            for l, c in outs:
                if c.denominator % p == 0:
                    raise ValueError(f"coefficient {c} is not {p}-integral")
                triples.append((idx, l, target.coerce(c)))
        ops.append(make_tensor(target, alg.dim, op.arity, triples))
    return Multialgebra(
        field=target,
        dim=alg.dim,
        ops=tuple(ops),
        product_index=alg.product_index,
        unit_index=alg.unit_index,
        involution_index=alg.involution_index,
    )


def base_change_check(
    alg: Multialgebra, p: int, elements: Iterable[Sequence[Scalar]], unital: bool = False
) -> bool:
    """is_generating after reducing a rational algebra and tuple mod p."""
    reduced = reduce_mod_p(alg, p)
    target = reduced.field
    projected = []
    for v in elements:
        vec = validate_vector(QQ, v, alg.dim)
        projected.append(tuple(target.coerce(x) for x in vec))
    ok, _ = is_generating(reduced, projected, unital=unital)
    return ok
