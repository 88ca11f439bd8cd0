import pytest

from exppoly.scalars import GaussianRational, I
from exppoly.units import UnitBasis, frequency_independence, sorted_frequencies
from exppoly.zpoly import ZPoly

Z = ZPoly.variable()


def test_independent_pair():
    # a*z + b*(1+i)z = 0 forces a = b = 0
    assert frequency_independence([Z, Z.scale(GaussianRational(1, 1))]) is None


def test_dependent_multiple():
    assert frequency_independence([Z, Z.scale(2)]) == (2, -1)


def test_dependent_triple():
    assert frequency_independence([Z * Z, Z * Z + Z, Z]) == (1, -1, 1)


def test_empty_and_single():
    assert frequency_independence([]) is None
    assert frequency_independence([Z * Z]) is None


def test_basis_invariants():
    basis = UnitBasis([Z * Z, Z])
    assert basis.orders == (2, 1)
    assert basis.order == 2
    assert basis.is_independent()
    with pytest.raises(ValueError):
        UnitBasis([Z, Z * Z])  # not sorted by descending degree
    with pytest.raises(ValueError):
        UnitBasis([Z + 1])  # nonzero constant term
    with pytest.raises(ValueError):
        UnitBasis([ZPoly.zero()])


def test_dependent_basis_detection():
    basis = UnitBasis([Z, Z.scale(2)])
    assert not basis.is_independent()
    assert basis.dependence == (2, -1)
    with pytest.raises(ValueError):
        basis.require_independent()


def test_refine_keeps_degree_and_order():
    basis = UnitBasis([Z * Z, Z.scale(2)])
    refined = basis.refine(1, 2)
    assert refined.frequencies[1] == Z
    assert refined.orders == basis.orders
    assert basis.refine(0, 1) is basis


def test_sorted_frequencies_deterministic():
    freqs = [Z, Z.scale(GaussianRational(0, 1)), Z * Z]
    ordered = sorted_frequencies(freqs)
    assert ordered[0] == Z * Z
    assert sorted_frequencies(list(reversed(freqs))) == ordered
