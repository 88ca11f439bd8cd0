import random

import pytest

from exppoly.errors import DivisionError, MonomialInputError
from exppoly.laurent import (
    LaurentPoly,
    critical_pair,
    is_squarefree,
    laurent_divexact,
    laurent_gcd,
    monomial_shape,
    squarefree_decompose,
)
from exppoly.ratfunc import RatFunc
from exppoly.scalars import GaussianRational
from exppoly.units import UnitBasis
from exppoly.zpoly import ZPoly

Z = ZPoly.variable()
U = LaurentPoly.variable(1, 0)
ZC = LaurentPoly.constant(1, RatFunc(Z))


def two_vars():
    return LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)


# -- ring arithmetic -------------------------------------------------------


def test_difference_of_squares():
    assert (U + 1) * (U - 1) == U * U - 1


def test_divexact_inverse():
    assert laurent_divexact(U * U - 1, U + 1) == U - 1


def test_divexact_monomial_unit():
    u1, u2 = two_vars()
    zc = LaurentPoly.constant(2, RatFunc(Z))
    q = laurent_divexact(u1 + zc, u2)
    assert q == u1 * u2**-1 + zc * u2**-1


def test_divexact_failure_carries_witness():
    with pytest.raises(DivisionError) as err:
        laurent_divexact(U * U + 1, U + 1)
    assert err.value.remainder is not None
    assert not err.value.remainder.is_zero()


def test_negative_power_requires_monomial():
    with pytest.raises(DivisionError):
        (U + 1) ** -1
    assert (U.scale(2)) ** -2 == U**-2 * LaurentPoly.constant(1, RatFunc(1, ZPoly([4])))


# -- gcd ----------------------------------------------------------------------


def test_gcd_common_factor():
    assert laurent_gcd(U * U - 1, U * U - U.scale(2) + 1) == U - 1


def test_gcd_distinct_variables_coprime():
    u1, u2 = two_vars()
    assert laurent_gcd(u1 + 1, u2 + 1).is_one()


def test_gcd_idempotent_normalizes():
    f = (U + 1).scale(GaussianRational(0, 3)) * U**-2
    g = laurent_gcd(f, f)
    assert g == U + 1


def test_gcd_divides_both():
    rng = random.Random(7)
    for _ in range(25):
        f = _random_poly(rng, arity=2)
        g = _random_poly(rng, arity=2)
        if f.is_zero() or g.is_zero():
            continue
        d = laurent_gcd(f, g)
        laurent_divexact(f, d)
        laurent_divexact(g, d)


def test_gcd_multiplicative_up_to_units():
    rng = random.Random(11)
    for _ in range(10):
        f = _random_poly(rng, arity=2, max_terms=2)
        g = _random_poly(rng, arity=2, max_terms=2)
        h = _random_poly(rng, arity=2, max_terms=2)
        if f.is_zero() or g.is_zero() or h.is_zero():
            continue
        left = laurent_gcd(f * h, g * h)
        right = (laurent_gcd(f, g) * h).normalized()
        assert left == right


# -- square-free structure -------------------------------------------------------


def test_squarefree_example():
    f = (U - 1) * (U - 1) * (U + 1)
    assert squarefree_decompose(f) == [(U + 1, 1), (U - 1, 2)]
    assert not is_squarefree(f)


def test_monomial_content_ignored():
    u1, u2 = two_vars()
    zc = LaurentPoly.constant(2, RatFunc(Z))
    f = u1**3 * (u2 + zc)
    assert squarefree_decompose(f) == [(u2 + zc, 1)]
    assert is_squarefree(f)
    assert squarefree_decompose(u1**3) == []
    assert is_squarefree(u1**3)


def test_genuinely_squarefree():
    u1, u2 = two_vars()
    f = u1 * u1 + u2
    assert squarefree_decompose(f) == [(f, 1)]
    assert is_squarefree(f)


def test_squarefree_reassembly_randomized():
    rng = random.Random(23)
    for _ in range(30):
        factors = _random_distinct_factors(rng, count=rng.randint(1, 3))
        f = LaurentPoly.one(2)
        for base, mult in factors:
            f = f * base**mult
        parts = squarefree_decompose(f)
        rebuilt = LaurentPoly.one(2)
        for part, mult in parts:
            rebuilt = rebuilt * part**mult
        quotient = laurent_divexact(f, rebuilt)
        assert quotient.is_monomial()
        for part, _ in parts:
            assert is_squarefree(part)


# -- derivation --------------------------------------------------------------------


def test_derivation_examples():
    basis = UnitBasis([Z])
    f = U * U + ZC * U
    image = f.derive(basis)
    assert image == U * U * 2 + U.scale(RatFunc(Z + 1))
    c = LaurentPoly.constant(1, GaussianRational(5, 2))
    assert c.derive(basis).is_zero()
    basis2 = UnitBasis([Z * Z])
    assert U.derive(basis2) == U.scale(RatFunc(Z.scale(2)))


def test_product_rule_randomized():
    basis = UnitBasis([Z * Z, Z])
    rng = random.Random(5)
    for _ in range(50):
        f = _random_poly(rng, arity=2)
        g = _random_poly(rng, arity=2)
        lhs = (f * g).derive(basis)
        rhs = f.derive(basis) * g + f * g.derive(basis)
        assert lhs == rhs


# -- critical pair ---------------------------------------------------------------


def test_critical_pair_squarefree_input():
    basis = UnitBasis([Z])
    f = U * U - 1
    fbar, fhat, g = critical_pair(f, basis)
    assert fbar == f
    assert fhat == f.derive(basis)
    assert g.is_one()


def test_critical_pair_squared_factor():
    basis = UnitBasis([Z])
    f = (U - 1) * (U - 1)
    fbar, fhat, g = critical_pair(f, basis)
    assert fbar == U - 1
    assert fhat == U.scale(2)  # 2 * derive(U - 1)
    assert g.is_one()


def test_critical_pair_relation_to_derivation():
    # derive(F) = fhat * (F / fbar) for any F
    basis = UnitBasis([Z * Z, Z])
    u1, u2 = two_vars()
    zc = LaurentPoly.constant(2, RatFunc(Z))
    f = (u1 - 1) * (u2 - zc) ** 2
    fbar, fhat, g = critical_pair(f, basis)
    cofactor = laurent_divexact(f, fbar)
    assert f.derive(basis) == fhat * cofactor
    assert g.is_one()


def test_critical_pair_rejects_monomial():
    basis = UnitBasis([Z])
    with pytest.raises(MonomialInputError):
        critical_pair(U**2, basis)


def test_critical_pair_requires_independent_basis():
    basis = UnitBasis([Z, Z.scale(2)])
    u1, u2 = two_vars()
    with pytest.raises(ValueError):
        critical_pair(u1 + u2, basis)


# -- monomial shape -----------------------------------------------------------------


def test_shape_already_monomial():
    delta = U.scale(RatFunc(Z.scale(4)))
    res = monomial_shape(delta, [0])
    assert res.ok
    assert res.exponents == {0: 1}
    assert res.cofactor == LaurentPoly.constant(1, RatFunc(Z.scale(4)))


def test_shape_failure_witness():
    res = monomial_shape(U * U + 1, [0])
    assert not res.ok
    assert res.witness == (0, (0, 2))


def test_shape_factors_out():
    u1, u2 = two_vars()
    res = monomial_shape(u1 * u2 + u1, [0])
    assert res.ok
    assert res.exponents == {0: 1}
    assert res.cofactor == u2 + 1


# -- helpers -------------------------------------------------------------------------


def _random_coef(rng):
    choice = rng.randrange(4)
    if choice == 0:
        return RatFunc(rng.randint(1, 4))
    if choice == 1:
        return RatFunc(GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2) or 1))
    if choice == 2:
        return RatFunc(Z + rng.randint(-2, 2))
    return RatFunc(Z.scale(rng.randint(1, 3)))


def _random_poly(rng, arity=2, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(-2, 2) for _ in range(arity))
        terms[exps] = _random_coef(rng)
    return LaurentPoly(arity, terms)


def _random_distinct_factors(rng, count):
    u1, u2 = two_vars()
    pool = [
        u1 + rng.randint(1, 5),
        u2 - rng.randint(1, 5),
        u1 + u2 + rng.randint(1, 3),
        u1 * u2 + rng.randint(2, 4),
        u1 - LaurentPoly.constant(2, RatFunc(Z)).scale(rng.randint(1, 3)),
    ]
    rng.shuffle(pool)
    return [(pool[i], rng.randint(1, 3)) for i in range(count)]
