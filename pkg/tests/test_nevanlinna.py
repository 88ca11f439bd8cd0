import math

import pytest

from exppoly.errors import NumericError
from exppoly.nevlab import (
    ExpPolyFunction,
    analyze,
    characteristic,
    characteristic_map,
    counting_function,
    gcd_counting,
    jensen_check,
    order_estimate,
    proximity,
    zeros_in_disk,
)
from exppoly.nevlab.nevanlinna import pole_records


def test_proximity_closed_forms():
    f = ExpPolyFunction.from_text("exp[z]")
    for r in (5.0, 12.0):
        assert abs(proximity(f, r) - r / math.pi) < 1e-5 * r
    g = ExpPolyFunction.from_text("exp[z^2]")
    assert abs(proximity(g, 3.0) - 9.0 / math.pi) < 1e-4
    c = ExpPolyFunction.from_text("1/2")
    assert proximity(c, 4.0) == 0.0


def test_counting_function_oracle():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    records = zeros_in_disk(f, 7.0)
    expected = math.log(7) + 2 * math.log(7 / (2 * math.pi))
    assert abs(counting_function(records, 7.0) - expected) < 1e-9
    # all-simple zeros: truncation level does not matter
    assert counting_function(records, 7.0, 1) == counting_function(records, 7.0)


def test_counting_function_truncation_at_origin():
    f = ExpPolyFunction.from_text("(exp[z] - 1)^2")
    records = zeros_in_disk(f, 1.0)
    assert counting_function(records, 1.0, 1) == 0.0  # log 1 = 0
    assert counting_function(records, 1.0) == 0.0


def test_characteristic_matches_growth():
    f = ExpPolyFunction.from_text("exp[z]")
    for r in (5.0, 10.0, 20.0):
        expected = r / math.pi
        assert abs(characteristic(f, r) - expected) / expected < 0.01


def test_characteristic_map_sandwich():
    # max_i T_{g_i} <= T_map <= sum_i T_{g_i} + O(1)
    g1 = ExpPolyFunction.from_text("exp[z]")
    g2 = ExpPolyFunction.from_text("exp[i*z]")
    one = ExpPolyFunction.from_text("1")
    r = 6.0
    t_map = characteristic_map([one, g1, g2], r)
    t1, t2 = characteristic(g1, r), characteristic(g2, r)
    assert max(t1, t2) <= t_map + 1e-6
    assert t_map <= t1 + t2 + 1.0


def test_map_characteristic_of_unit_pair():
    one = ExpPolyFunction.from_text("1")
    g = ExpPolyFunction.from_text("exp[z]")
    r = 8.0
    assert abs(characteristic_map([one, g], r) - r / math.pi) < 1e-4


def test_monotonicity():
    f = ExpPolyFunction.from_text("exp[z^2] + exp[z]")
    samples = analyze(f, [2.0, 3.0, 4.5, 6.75], trunc_levels=(1, 2))
    for a, b in zip(samples, samples[1:]):
        assert b.T >= a.T - 1e-9
        assert b.N >= a.N - 1e-9
        for q in (1, 2):
            assert b.N_trunc[q] >= a.N_trunc[q] - 1e-9
    for s in samples:
        assert s.N >= s.N_trunc[2] >= s.N_trunc[1] >= 0.0


def test_coefficient_poles_counted():
    f = ExpPolyFunction.from_text("exp[z]/(z - 1)")
    poles = pole_records(f, 10.0)
    assert len(poles) == 1
    assert abs(poles[0].location - 1.0) < 1e-9
    assert poles[0].multiplicity == 1
    assert counting_function(poles, 10.0) == pytest.approx(math.log(10), abs=1e-12)
    # m + N sits between the zero-pole-free height and height plus pole term
    T = characteristic(f, 10.0)
    assert 10 / math.pi - 1.0 <= T <= 10 / math.pi + math.log(10) + 1.0


def test_jensen_consistency():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    lhs, rhs, diff = jensen_check(f, 20.0)
    assert abs(diff) < 1e-4
    g = ExpPolyFunction.from_text("exp[z] - 2")
    _, _, diff_g = jensen_check(g, 9.0)
    assert abs(diff_g) < 1e-4


def test_gcd_counting_nested_units():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    g = ExpPolyFunction.from_text("exp[2*z] - 1")
    value = gcd_counting(f, g, 7.0)
    expected = math.log(7) + 2 * math.log(7 / (2 * math.pi))
    assert abs(value - expected) < 1e-9


def test_gcd_counting_disjoint():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    g = ExpPolyFunction.from_text("exp[z^2] + 1")
    assert gcd_counting(f, g, 10.0) == 0.0


def test_gcd_counting_self():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    assert gcd_counting(f, f, 7.0) == pytest.approx(
        math.log(7) + 2 * math.log(7 / (2 * math.pi)), abs=1e-9
    )


def test_order_estimates():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    samples = analyze(f, [4.0, 8.0, 16.0, 32.0, 64.0])
    assert abs(order_estimate(samples) - 1.0) < 0.05
    g = ExpPolyFunction.from_text("exp[z^2] + exp[z]")
    samples_g = analyze(g, [2.0, 3.0, 4.5, 6.75, 10.0])
    assert abs(order_estimate(samples_g) - 2.0) < 0.1
    c = ExpPolyFunction.from_text("3")
    samples_c = analyze(c, [2.0, 4.0, 8.0, 16.0])
    assert abs(order_estimate(samples_c)) < 0.05


def test_order_estimate_degenerate_grid():
    f = ExpPolyFunction.from_text("exp[z]")
    with pytest.raises(NumericError):
        order_estimate(analyze(f, [2.0, 4.0]))
