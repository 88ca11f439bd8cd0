"""Exact scalars: Gaussian rationals a + b*i with a, b arbitrary-precision rationals.

This is the coefficient field for everything symbolic in the package.  Equality
is decidable, which the GCD machinery depends on, and the field is closed under
all the arithmetic the rest of the package performs.
"""

from __future__ import annotations

from fractions import Fraction


class GaussianRational:
    """Immutable element of Q(i), stored as reduced real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_rational(self) -> bool:
        return not self.im

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussianRational":
        return _coerce(other) - self

    def __mul__(self, other) -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "GaussianRational":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "GaussianRational":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "GaussianRational":
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    # -- conversions -----------------------------------------------------

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def sort_key(self):
        """Total order used only for canonical output ordering."""
        return (self.re, self.im)

    # -- identity --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return render_literal(self)


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")


def render_literal(value: GaussianRational) -> str:
    """Render in the expression grammar: "a", "a/b", "ai", or "(a+bi)/c"."""
    re, im = value.re, value.im
    if not im:
        return str(re)
    if not re and im.denominator == 1:
        return f"{im.numerator}i"
    den = _lcm(re.denominator, im.denominator)
    a = re.numerator * (den // re.denominator)
    b = im.numerator * (den // im.denominator)
    sign = "+" if b >= 0 else "-"
    body = f"({a}{sign}{abs(b)}i)"
    return body if den == 1 else f"{body}/{den}"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
