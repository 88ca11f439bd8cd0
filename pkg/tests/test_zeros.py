import math

import numpy as np
import pytest

from exppoly.nevlab import ExpPolyFunction, scan_disk, zeros_in_disk


def test_exp_minus_one_small_disk():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    records = zeros_in_disk(f, 7.0)
    assert [rec.multiplicity for rec in records] == [1, 1, 1]
    targets = sorted([0.0, 2 * math.pi, 2 * math.pi])
    locs = sorted(abs(rec.location) for rec in records)
    assert max(abs(a - b) for a, b in zip(locs, targets)) < 1e-9
    # sorted by (|z|, arg)
    keys = [rec.sort_key() for rec in records]
    assert keys == sorted(keys)


def test_unit_has_no_zeros():
    f = ExpPolyFunction.from_text("exp[z]")
    assert zeros_in_disk(f, 5.0) == []


def test_squared_zero_multiplicity():
    f = ExpPolyFunction.from_text("(exp[z] - 1)^2")
    records = zeros_in_disk(f, 1.0)
    assert len(records) == 1
    assert records[0].multiplicity == 2
    assert abs(records[0].location) < 1e-7


def test_argument_principle_consistency():
    f = ExpPolyFunction.from_text("exp[z^2] + exp[z]")
    scan = scan_disk(f, 4.5)
    assert sum(rec.multiplicity for rec in scan.records) == scan.winding


def test_residuals_and_enclosures():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    records = zeros_in_disk(f, 7.0)
    for rec in records:
        assert rec.residual < 1e-9
        assert rec.enclosure_radius > 0
    for i, a in enumerate(records):
        for b in records[i + 1 :]:
            assert abs(a.location - b.location) > a.enclosure_radius + b.enclosure_radius


def test_zero_function_rejected():
    f = ExpPolyFunction.from_text("exp[z] - exp[z]")
    with pytest.raises(ValueError):
        zeros_in_disk(f, 1.0)


def test_determinism():
    f = ExpPolyFunction.from_text("exp[z^2] + exp[z]")
    a = zeros_in_disk(f, 3.0)
    b = zeros_in_disk(f, 3.0)
    assert [(r.location, r.multiplicity) for r in a] == [
        (r.location, r.multiplicity) for r in b
    ]


def test_derivative_agrees_with_finite_differences():
    rng = np.random.default_rng(42)
    f = ExpPolyFunction.from_text("z^2*exp[z^2] + (1+i)*exp[z] + 1/(z-2)")
    fp = f.derivative()
    pts = rng.uniform(-1.5, 1.5, size=100) + 1j * rng.uniform(-1.5, 1.5, size=100)
    h = 1e-5
    for z in pts:
        numeric = (f(z + h) - f(z - h)) / (2 * h) + (f(z + 1j * h) - f(z - 1j * h)) / (
            2j * h
        )
        numeric /= 2.0
        exact = fp(z)
        assert abs(numeric - exact) <= 1e-6 * max(1.0, abs(exact))
