from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exppoly.scalars import GaussianRational
from exppoly.zpoly import ZPoly, interpolate, poly_gcd, poly_lcm

Z = ZPoly.variable()

small_polys = st.lists(
    st.integers(min_value=-9, max_value=9), min_size=0, max_size=5
).map(ZPoly)


def test_normalization_strips_leading_zeros():
    p = ZPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert ZPoly([0, 0]).is_zero()
    assert ZPoly([]).degree == -1


def test_arithmetic():
    p = Z * Z - 1
    q = Z + 1
    assert p == (Z - 1) * (Z + 1)
    assert p + q == Z * Z + Z
    assert (p - p).is_zero()


def test_divmod_exact_and_remainder():
    p = Z**3 - 2 * Z + 5
    d = Z - 1
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree < d.degree
    with pytest.raises(ZeroDivisionError):
        p.divmod(ZPoly.zero())


def test_gcd_examples():
    assert poly_gcd(Z * Z - 1, Z * Z - 2 * Z + 1) == Z - 1
    assert poly_gcd(Z + 1, Z - 1).is_one()
    assert poly_lcm(Z - 1, Z + 1) == Z * Z - 1


@given(small_polys, small_polys, small_polys)
def test_gcd_divides(a, b, c):
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    if not a.is_zero():
        assert (a % g).is_zero()
    if not b.is_zero():
        assert (b % g).is_zero()


def test_derivative_and_compose():
    p = 3 * Z**2 + Z
    assert p.derivative() == 6 * Z + 1
    assert p.compose(Z + 1) == 3 * (Z + 1) ** 2 + (Z + 1)


def test_eval():
    p = Z**2 + 1
    two = GaussianRational(2)
    assert p.eval_scalar(two) == GaussianRational(5)
    assert abs(p.eval_complex(2j) - (-3 + 0j)) < 1e-14


def test_interpolation():
    pts = [
        (GaussianRational(k), (Z**2 - Z).eval_scalar(GaussianRational(k)))
        for k in (0, 1, -1)
    ]
    assert interpolate(pts) == Z**2 - Z
