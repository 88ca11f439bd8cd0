"""The coefficient field K = Q(i)(z): reduced fractions of ZPoly.

Invariants: gcd(num, den) = 1, den monic and nonzero.  Enforced on every
construction so equality is plain structural comparison.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational
from .zpoly import ZPoly, poly_gcd


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = ZPoly.one() if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = ZPoly.one()
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num // g, den // g
            lead = den.leading()
            if not lead.is_one():
                inv = lead.inverse()
                num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return _RF_ZERO

    @staticmethod
    def one() -> "RatFunc":
        return _RF_ONE

    @staticmethod
    def variable() -> "RatFunc":
        return RatFunc(ZPoly.variable())

    @staticmethod
    def scalar(value) -> "RatFunc":
        return RatFunc(ZPoly.constant(value))

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_scalar(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def as_scalar(self) -> GaussianRational:
        if not self.is_scalar():
            raise ValueError("not a scalar")
        return self.num.constant_term()

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other) -> "RatFunc":
        return _as_ratfunc(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * _as_ratfunc(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    # -- evaluation --------------------------------------------------------------

    def eval_scalar(self, point: GaussianRational) -> GaussianRational:
        d = self.den.eval_scalar(point)
        if d.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.eval_scalar(point) / d

    def eval_complex(self, z):
        return self.num.eval_complex(z) / self.den.eval_complex(z)

    # -- identity ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational, ZPoly)):
            other = _as_ratfunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den.is_one():
            return f"RatFunc({self.num!r})"
        return f"RatFunc({self.num!r}, {self.den!r})"

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())


def _as_poly(value) -> ZPoly:
    if isinstance(value, ZPoly):
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return ZPoly.constant(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to ZPoly")


def _as_ratfunc(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc(_as_poly(value))


_RF_ZERO = RatFunc(ZPoly.zero())
_RF_ONE = RatFunc(ZPoly.one())
