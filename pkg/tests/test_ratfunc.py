import pytest
from hypothesis import given, strategies as st

from exppoly.ratfunc import RatFunc
from exppoly.zpoly import ZPoly, poly_gcd

Z = ZPoly.variable()

ratfuncs = st.builds(
    lambda n, d: RatFunc(ZPoly(n), ZPoly(d)),
    st.lists(st.integers(-9, 9), min_size=0, max_size=4),
    st.lists(st.integers(-9, 9), min_size=1, max_size=4).filter(
        lambda cs: any(cs)
    ),
)


def test_normalization_invariants():
    f = RatFunc(2 * Z + 2, 4 * Z - 4)
    assert f.den.is_monic()
    assert poly_gcd(f.num, f.den).is_one()
    assert f == RatFunc(Z + 1, 2 * Z - 2)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RatFunc(Z, ZPoly.zero())


def test_field_operations():
    f = RatFunc(ZPoly.one(), Z)
    g = RatFunc(Z)
    assert f * g == RatFunc(ZPoly.one())
    assert f + f == RatFunc(ZPoly([2]), Z)
    assert (f - f).is_zero()
    assert f.inverse() == g
    assert f**-2 == RatFunc(Z * Z)


def test_derivative_quotient_rule():
    f = RatFunc(Z * Z, Z + 1)
    expected = RatFunc(Z * Z + 2 * Z, (Z + 1) * (Z + 1))
    assert f.derivative() == expected
    assert RatFunc(ZPoly([5])).derivative().is_zero()


@given(ratfuncs, ratfuncs)
def test_ring_laws(f, g):
    assert f + g == g + f
    assert f * g == g * f
    assert f * (f + g) == f * f + f * g


@given(ratfuncs.filter(lambda f: not f.is_zero()))
def test_inverse_law(f):
    assert (f * f.inverse()).is_one()


def test_evaluation():
    from exppoly.scalars import GaussianRational

    f = RatFunc(Z + 1, Z - 1)
    assert f.eval_scalar(GaussianRational(3)) == GaussianRational(2)
    with pytest.raises(ZeroDivisionError):
        f.eval_scalar(GaussianRational(1))
