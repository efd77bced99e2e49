"""Row reduction over an exact field.

The workhorse is an incremental reducer: vectors are inserted one at a time
and the row set is kept in reduced row echelon form throughout, so the basis
reached at any point is canonical (depends only on the span, not on the
insertion order).  Subspace closure loops depend on that canonicality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import Field, Scalar, validate_vector


@dataclass(frozen=True)
class EchelonBasis:
    """A canonical (RREF) basis of a subspace of field^width.

    Rows are sorted by pivot column, each pivot is 1 and is the only nonzero
    entry in its column.
    """

    field: Field
    width: int
    rows: tuple[tuple[Scalar, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Residual of v after eliminating all pivot columns."""
        if len(v) != self.width:
            raise ValueError(f"vector length {len(v)} != ambient {self.width}")
        return tuple(_reduce_row(self.field, list(v), self.rows, self.pivots))

    def contains(self, v: Sequence[Scalar]) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)


def _reduce_row(field: Field, work: list, rows, pivots) -> list:
    sub, mul, zero = field.sub, field.mul, field.zero
    for row, c in zip(rows, pivots):
        coeff = work[c]
        if coeff != zero:
            work[:] = [sub(x, mul(coeff, y)) for x, y in zip(work, row)]
    return work


class RowReducer:
    """Mutable RREF accumulator over a fixed field and ambient dimension."""

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: list[list[Scalar]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residual(self, v: Sequence[Scalar]) -> list[Scalar]:
        if len(v) != self.width:
            raise ValueError(f"vector length {len(v)} != ambient {self.width}")
        return _reduce_row(self.field, list(v), self.rows, self.pivots)

    def insert(self, v: Sequence[Scalar]) -> bool:
        """Add v to the span.  Returns True iff the dimension grew."""
        field = self.field
        zero = field.zero
        work = self.residual(v)
        pivot = next((i for i, x in enumerate(work) if x != zero), None)
        if pivot is None:
            return False
        lead = work[pivot]
        if lead != field.one:
            inv = field.inv(lead)
            work = [field.mul(inv, x) for x in work]
        # eliminate the new pivot column from the existing rows
        sub, mul = field.sub, field.mul
        for row in self.rows:
            coeff = row[pivot]
            if coeff != zero:
                row[:] = [sub(x, mul(coeff, y)) for x, y in zip(row, work)]
        at = next((k for k, c in enumerate(self.pivots) if c > pivot), len(self.pivots))
        self.rows.insert(at, work)
        self.pivots.insert(at, pivot)
        return True

    def contains(self, v: Sequence[Scalar]) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self.residual(v))

    def snapshot(self) -> EchelonBasis:
        return EchelonBasis(
            field=self.field,
            width=self.width,
            rows=tuple(tuple(row) for row in self.rows),
            pivots=tuple(self.pivots),
        )


def rref(field: Field, rows: Iterable[Sequence[Scalar]], width: int | None = None) -> EchelonBasis:
    """Canonical basis of the row span.  Validates entries against the field."""
    rows = [list(r) for r in rows]
    if width is None:
        if not rows:
            raise ValueError("width is required for an empty row list")
        width = len(rows[0])
    reducer = RowReducer(field, width)
    for r in rows:
        reducer.insert(validate_vector(field, r, width))
    return reducer.snapshot()


def reduce_vector(basis: EchelonBasis, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Residual of v modulo the subspace; zero iff v lies in it."""
    return basis.reduce(v)
