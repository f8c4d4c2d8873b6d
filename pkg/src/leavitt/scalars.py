"""Exact scalar fields: the rationals (default) and prime fields GF(p).

Every coefficient in the package is either a ``fractions.Fraction`` or an
``FpElement``; arithmetic is exact, there is no floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction


class FieldMismatchError(ValueError):
    """Raised when two elements carry scalars from different fields."""


class FpElement:
    """An element of GF(p), normalized to 0 <= value < p."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return FpElement(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.p, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.p, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.p, other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.p, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return FpElement(self.p, self.value * pow(other.value, self.p - 2, self.p))

    def __neg__(self):
        return FpElement(self.p, -self.value)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpElement({self.p}, {self.value})"

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field of rationals, backed by fractions.Fraction."""

    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def from_fraction(self, num: int, den: int = 1):
        return Fraction(num, den)

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """GF(p) for a prime p > 1."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p
        self.name = f"Fp:{p}"

    def zero(self):
        return FpElement(self.p, 0)

    def one(self):
        return FpElement(self.p, 1)

    def from_int(self, n: int):
        return FpElement(self.p, n)

    def from_fraction(self, num: int, den: int = 1):
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes in GF({self.p})")
        return FpElement(self.p, num) / FpElement(self.p, den)

    def format(self, x) -> str:
        return str(x.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


RATIONALS = RationalField()


def parse_field(spec: str):
    """Parse a field spec: "Q" or "Fp:<prime>" (as in LEAVITT_FIELD)."""
    spec = spec.strip()
    if spec in ("Q", "q", ""):
        return RATIONALS
    if spec.lower().startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r}; expected Q or Fp:<prime>")


def scalar_field(x):
    """Return the field descriptor a scalar value belongs to."""
    if isinstance(x, Fraction):
        return RATIONALS
    if isinstance(x, FpElement):
        return PrimeField(x.p)
    if isinstance(x, int):
        return RATIONALS
    raise TypeError(f"not a supported scalar: {x!r}")


def check_same_field(a, b):
    """Raise FieldMismatchError unless scalars a and b live in one field.

    Plain ints act as universal integer multiples and are compatible with
    either field.
    """
    if isinstance(a, int) or isinstance(b, int):
        return
    fa, fb = scalar_field(a), scalar_field(b)
    if fa != fb:
        raise FieldMismatchError(f"scalar fields differ: {fa.name} vs {fb.name}")


def sign_pow(exponent: int) -> int:
    """(-1) ** exponent for an arbitrary (possibly negative) integer."""
    return -1 if exponent % 2 else 1
