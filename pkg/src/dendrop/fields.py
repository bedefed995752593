"""Exact scalars over the rationals and over prime fields.

Scalar values are plain Python objects: ``fractions.Fraction`` for rational
coefficients, small non-negative ``int`` residues for prime fields.  A
``FieldSpec`` carries the arithmetic; containers (matrices, structure
tensors) hold raw values plus one shared ``FieldSpec``.  Nothing in this
module (or anywhere downstream of it) touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadRationalError, FieldMismatchError

RATIONAL = "rational"
PRIME = "prime"

_F0 = Fraction(0)
_F1 = Fraction(1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: the rationals, or integers mod a prime p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == PRIME:
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == PRIME

    @property
    def zero(self):
        return _F0 if self.kind == RATIONAL else 0

    @property
    def one(self):
        return _F1 if self.kind == RATIONAL else 1

    def add(self, a, b):
        return a + b if self.kind == RATIONAL else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == RATIONAL else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == RATIONAL else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == RATIONAL else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _F1 / a if self.kind == RATIONAL else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, k: int):
        return Fraction(k) if self.kind == RATIONAL else k % self.p

    def elements(self):
        """All field elements; only defined for prime fields."""
        if self.kind != PRIME:
            raise FieldMismatchError("rational field is not enumerable")
        return range(self.p)

    def parse(self, text: str):
        """Parse a scalar literal: an integer string or ``a/b``."""
        s = text.strip()
        num_s, sep, den_s = s.partition("/")
        try:
            num = int(num_s)
            den = int(den_s) if sep else 1
        except ValueError:
            raise BadRationalError(f"malformed scalar literal {text!r}") from None
        if sep and (den_s.startswith(("+", "-")) or den <= 0):
            raise BadRationalError(f"denominator must be a positive integer: {text!r}")
        if den == 0:
            raise BadRationalError(f"zero denominator: {text!r}")
        if self.kind == RATIONAL:
            return Fraction(num, den)
        if den % self.p == 0:
            raise BadRationalError(f"denominator of {text!r} is divisible by p={self.p}")
        return (num % self.p) * pow(den % self.p, -1, self.p) % self.p

    def format(self, value) -> str:
        """Canonical scalar literal: lowest terms, integer form when exact."""
        return str(value)

    def convert_from_rational(self, value):
        """Map a rational scalar into this field; error if p divides the denominator."""
        frac = Fraction(value)
        if self.kind == RATIONAL:
            return frac
        if frac.denominator % self.p == 0:
            raise BadRationalError(
                f"{frac} has no image mod {self.p} (denominator divisible by p)")
        return (frac.numerator % self.p) * pow(frac.denominator % self.p, -1, self.p) % self.p


RATIONALS = FieldSpec(RATIONAL)


def prime_field(p: int) -> FieldSpec:
    return FieldSpec(PRIME, p)


def same_field(a: FieldSpec, b: FieldSpec) -> FieldSpec:
    if a != b:
        raise FieldMismatchError(f"field mismatch: {a} vs {b}")
    return a
