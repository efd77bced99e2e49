"""Exact scalar arithmetic: prime fields and arbitrary-precision rationals.

Scalars are plain Python values (int residues in [0, p) for a prime field,
Fraction for the rationals) and a field descriptor object carries the
arithmetic.  Keeping scalars unboxed keeps the linear-algebra kernels fast;
the descriptor keeps everything exact.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division up to sqrt(n)."""
    if n < 2:
        return False
    for small in (2, 3, 5):
        if n == small:
            return True
        if n % small == 0:
            return False
    f = 7
    # wheel mod 6 starting at 7
    step = 4
    while f * f <= n:
        if n % f == 0:
            return False
        f += step
        step = 6 - step
    return True


class PrimeField:
    """The field Z/p for a prime p.  Elements are ints reduced into [0, p)."""

    __slots__ = ("p",)

    zero = 0
    one = 1

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("field descriptors are immutable")

    @property
    def char(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def coerce(self, x: object) -> int:
        """Reduce an integer into the field; reject anything non-integral."""
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ValueError(f"denominator of {x} is divisible by {self.p}")
                return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
            raise ValueError(f"not a scalar for F_{self.p}: {x!r}")
        return x % self.p

    def elements(self) -> range:
        return range(self.p)

    def format(self, a: int) -> str:
        return str(a)

    def parse(self, s: str) -> int:
        return self.coerce(Fraction(s))

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"F{self.p}"


class RationalField:
    """The rationals.  Elements are Fraction values (always in lowest terms)."""

    __slots__ = ()

    zero = Fraction(0)
    one = Fraction(1)

    char = 0
    order = None

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def coerce(self, x: object) -> Fraction:
        if isinstance(x, bool):
            raise ValueError(f"not a rational scalar: {x!r}")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise ValueError(f"not a rational scalar: {x!r}")

    def elements(self):
        raise ValueError("the rationals are infinite")

    def format(self, a: Fraction) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")

    def __repr__(self) -> str:
        return "Q"


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Prime field descriptor, cached so GF(p) is GF(p)."""
    field = _gf_cache.get(p)
    if field is None:
        field = _gf_cache[p] = PrimeField(p)
    return field


Field = Union[PrimeField, RationalField]


def field_from_name(name: str) -> Field:
    """Parse "Q" or "F<p>" (also accepts "F_<p>")."""
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F"):
        body = name[1:].lstrip("_")
        if body.isdigit():
            return GF(int(body))
    raise ValueError(f"unknown field {name!r} (expected Q or F<p>)")


def field_name(field: Field) -> str:
    if isinstance(field, RationalField):
        return "Q"
    return f"F{field.p}"


def validate_vector(field: Field, v, dim: int) -> tuple:
    """Coerce a length-dim sequence into a tuple of field scalars."""
    vec = tuple(field.coerce(x) for x in v)
    if len(vec) != dim:
        raise ValueError(f"expected a vector of length {dim}, got {len(vec)}")
    return vec
