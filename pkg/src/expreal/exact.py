"""Exact dyadic and rational arithmetic.

Rationals are plain :class:`fractions.Fraction` objects (always reduced,
positive denominator). Dyadics are numbers ``m * 2**e`` kept in canonical
form: the mantissa is odd, or the value is zero with exponent 0, so two
dyadics are equal exactly when their fields are equal.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

from .errors import DomainError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DYADIC_RE = re.compile(r"^\s*([+-]?\d+)\s*\*\s*2\^([+-]?\d+)\s*$")


@total_ordering
class Dyadic:
    """Immutable dyadic rational ``mantissa * 2**exponent``."""

    __slots__ = ("_m", "_e")

    def __init__(self, mantissa: int, exponent: int = 0):
        mantissa = int(mantissa)
        exponent = int(exponent)
        if mantissa == 0:
            exponent = 0
        else:
            tz = (mantissa & -mantissa).bit_length() - 1
            if tz:
                mantissa >>= tz
                exponent += tz
        object.__setattr__(self, "_m", mantissa)
        object.__setattr__(self, "_e", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @property
    def mantissa(self) -> int:
        return self._m

    @property
    def exponent(self) -> int:
        return self._e

    @classmethod
    def from_scaled(cls, mantissa: int, k: int) -> "Dyadic":
        """Return ``mantissa * 2**-k``."""
        return cls(mantissa, -k)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse the ``"m*2^e"`` text form."""
        match = _DYADIC_RE.match(text)
        if match is None:
            raise DomainError(f"not a dyadic literal: {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))

    def to_fraction(self) -> Fraction:
        if self._e >= 0:
            return Fraction(self._m << self._e)
        return Fraction(self._m, 1 << -self._e)

    def scaled(self, k: int) -> int:
        """Mantissa of this value at the fixed exponent ``-k``.

        Raises if the value is not representable with ``k`` fractional bits.
        """
        shift = self._e + k
        if shift < 0:
            raise DomainError(f"{self} has more than {k} fractional bits")
        return self._m << shift

    # arithmetic

    def __add__(self, other):
        other = _as_dyadic(other)
        if other is NotImplemented:
            return NotImplemented
        e = min(self._e, other._e)
        return Dyadic((self._m << (self._e - e)) + (other._m << (other._e - e)), e)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_dyadic(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_dyadic(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_dyadic(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self._m * other._m, self._e + other._e)

    __rmul__ = __mul__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self._m, self._e)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self._m), self._e)

    def __bool__(self) -> bool:
        return self._m != 0

    # comparison (also against int and Fraction)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self._m == other._m and self._e == other._e
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Dyadic):
            return dy_cmp(self, other) < 0
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() < other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __str__(self) -> str:
        return f"{self._m}*2^{self._e}"

    def __repr__(self) -> str:
        return f"Dyadic({self._m}, {self._e})"

    def __reduce__(self):
        return (Dyadic, (self._m, self._e))


def _as_dyadic(value):
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int):
        return Dyadic(value)
    return NotImplemented


def dy_add(a: Dyadic, b: Dyadic) -> Dyadic:
    return a + b


def dy_sub(a: Dyadic, b: Dyadic) -> Dyadic:
    return a - b


def dy_cmp(a: Dyadic, b: Dyadic) -> int:
    """Three-way comparison: -1, 0 or 1."""
    e = min(a.exponent, b.exponent)
    x = a.mantissa << (a.exponent - e)
    y = b.mantissa << (b.exponent - e)
    return (x > y) - (x < y)


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def rat_sub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def rat_cmp(a: Fraction, b: Fraction) -> int:
    """Three-way comparison by cross-multiplication."""
    x = a.numerator * b.denominator
    y = b.numerator * a.denominator
    return (x > y) - (x < y)


def parse_rational(text: str) -> Fraction:
    """Parse an exact fraction written as ``"p/q"``; decimals are rejected."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise DomainError(f"expected a fraction 'p/q', got {text!r}")
    den = int(match.group(2))
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(int(match.group(1)), den)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def check_unit_interval(x: Fraction, name: str = "x") -> None:
    if x < 0 or x > 1:
        raise DomainError(f"{name}={format_rational(x)} is outside [0, 1]")


def floor_scaled(q: int, x: Fraction) -> int:
    """Return floor(q * x) for x in [0, 1]."""
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    check_unit_interval(x)
    return (q * x.numerator) // x.denominator


def round_scaled(num: int, den: int, k: int) -> int:
    """Nearest integer to ``num * 2**k / den`` with ties toward -infinity.

    ``den`` must be positive.
    """
    m, r = divmod(num << k, den)
    if 2 * r > den:
        m += 1
    return m


def round_to_dyadic(x: Fraction, k: int) -> Dyadic:
    """Round ``x`` to the nearest multiple of ``2**-k`` (ties toward -inf)."""
    if k < 0:
        raise DomainError(f"precision must be nonnegative, got {k}")
    return Dyadic(round_scaled(x.numerator, x.denominator, k), -k)


def dyadic_to_decimal(value: Dyadic, digits: int) -> str:
    """Decimal string of ``value`` rounded half-up to ``digits`` places."""
    frac = value.to_fraction()
    scaled = frac * 10**digits
    n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    sign = "-" if n < 0 else ""
    n = abs(n)
    if digits == 0:
        return f"{sign}{n}"
    s = str(n).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"
