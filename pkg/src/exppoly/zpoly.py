"""Univariate polynomials over the Gaussian rationals.

Used for the variable z throughout (frequency polynomials, numerators and
denominators of coefficients) and reused as a generic dense univariate
polynomial wherever one is needed over Q(i).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import GaussianRational, ONE, ZERO


class ZPoly:
    """Dense polynomial; coeffs[k] is the coefficient of the k-th power.

    The zero polynomial stores an empty tuple.  Leading coefficient is never
    zero otherwise.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        normalized = [_coerce_scalar(c) for c in coeffs]
        while normalized and normalized[-1].is_zero():
            normalized.pop()
        object.__setattr__(self, "coeffs", tuple(normalized))

    def __setattr__(self, name, value):
        raise AttributeError("ZPoly is immutable")

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero() -> "ZPoly":
        return _ZERO_POLY

    @staticmethod
    def one() -> "ZPoly":
        return _ONE_POLY

    @staticmethod
    def variable() -> "ZPoly":
        return _VAR_POLY

    @staticmethod
    def constant(value) -> "ZPoly":
        return ZPoly([value])

    @staticmethod
    def monomial(coef, power: int) -> "ZPoly":
        return ZPoly([ZERO] * power + [coef])

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self) -> GaussianRational:
        return self.coeffs[0] if self.coeffs else ZERO

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def coefficient(self, power: int) -> GaussianRational:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return ZERO

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "ZPoly":
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self) -> "ZPoly":
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "ZPoly":
        return self + (-_coerce_poly(other))

    def __rsub__(self, other) -> "ZPoly":
        return _coerce_poly(other) - self

    def __mul__(self, other) -> "ZPoly":
        other = _coerce_poly(other)
        if self.is_zero() or other.is_zero():
            return _ZERO_POLY
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def scale(self, scalar) -> "ZPoly":
        scalar = _coerce_scalar(scalar)
        return ZPoly([c * scalar for c in self.coeffs])

    def __pow__(self, k: int) -> "ZPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = _ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "ZPoly") -> tuple["ZPoly", "ZPoly"]:
        """Euclidean division over the field Q(i)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn, dd = len(rem) - 1, other.degree
        if dn < dd:
            return _ZERO_POLY, self
        inv_lead = other.leading().inverse()
        quot = [ZERO] * (dn - dd + 1)
        for k in range(dn - dd, -1, -1):
            c = rem[dd + k] * inv_lead
            if c.is_zero():
                continue
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                rem[j + k] = rem[j + k] - c * b
        return ZPoly(quot), ZPoly(rem[:dd])

    def __floordiv__(self, other) -> "ZPoly":
        return self.divmod(_coerce_poly(other))[0]

    def __mod__(self, other) -> "ZPoly":
        return self.divmod(_coerce_poly(other))[1]

    def monic(self) -> "ZPoly":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def derivative(self) -> "ZPoly":
        return ZPoly(
            [GaussianRational(k) * c for k, c in enumerate(self.coeffs)][1:]
        )

    def compose(self, inner: "ZPoly") -> "ZPoly":
        result = _ZERO_POLY
        for c in reversed(self.coeffs):
            result = result * inner + ZPoly([c])
        return result

    # -- evaluation ----------------------------------------------------------

    def eval_scalar(self, point: GaussianRational) -> GaussianRational:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def eval_complex(self, z):
        """Horner evaluation at a complex number or numpy array."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    # -- identity -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ZPoly([other])
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ZPoly({[str(c) for c in self.coeffs]})"

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))


def _coerce_scalar(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(value)


def _coerce_poly(value) -> ZPoly:
    if isinstance(value, ZPoly):
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return ZPoly([value])
    raise TypeError(f"cannot coerce {type(value).__name__} to ZPoly")


def poly_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: ZPoly, b: ZPoly) -> ZPoly:
    if a.is_zero() or b.is_zero():
        return ZPoly.zero()
    g = poly_gcd(a, b)
    return ((a * b) // g).monic()


def interpolate(points: Sequence[tuple[GaussianRational, GaussianRational]]) -> ZPoly:
    """Lagrange interpolation through distinct sample points over Q(i)."""
    result = ZPoly.zero()
    for i, (xi, yi) in enumerate(points):
        if yi.is_zero():
            continue
        basis = ZPoly.one()
        denom = ONE
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = basis * ZPoly([-xj, ONE])
            denom = denom * (xi - xj)
        result = result + basis.scale(yi / denom)
    return result


_ZERO_POLY = ZPoly()
_ONE_POLY = ZPoly([ONE])
_VAR_POLY = ZPoly([ZERO, ONE])
