"""The ground field: Gaussian rationals a + b*i with exact rational a, b.

Every scalar in the package is a :class:`GaussianRational`.  Components are
`fractions.Fraction`, so normal form (reduced, positive denominator) is
automatic and equality is componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, SchemaError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(value) -> "GaussianRational":
        """Coerce an int, Fraction or GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(_frac(value))

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise DivisionByZero("inverse of 0")
        n = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.of(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.of(other) * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm a^2 + b^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return not self.is_zero()

    # -- text ----------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(b: Fraction) -> str:
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    return f"{b}*i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def conj(x: GaussianRational) -> GaussianRational:
    return x.conjugate()


def scalar_from_json(obj, pointer="") -> GaussianRational:
    """Parse {"re": "p/q", "im": "p/q"}; a bare string/int means a rational."""
    if isinstance(obj, (str, int)):
        try:
            return GaussianRational(_frac(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {obj!r}: {exc}", pointer)
    if not isinstance(obj, dict):
        raise SchemaError("scalar must be an object or rational literal", pointer)
    unknown = set(obj) - {"re", "im"}
    if unknown:
        raise SchemaError(f"unknown scalar fields {sorted(unknown)}", pointer)
    try:
        re = _frac(obj.get("re", "0"))
        im = _frac(obj.get("im", "0"))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SchemaError(f"bad rational component: {exc}", pointer)
    return GaussianRational(re, im)


def scalar_to_json(x: GaussianRational):
    out = {"re": str(x.re)}
    if x.im:
        out["im"] = str(x.im)
    return out
