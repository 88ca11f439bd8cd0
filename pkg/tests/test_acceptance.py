"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
verdict lines.
"""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from exppoly.expr import lower_functions, parse_function, parse_ypoly
from exppoly.laurent import (
    LaurentPoly,
    critical_pair,
    is_squarefree,
    laurent_divexact,
    squarefree_decompose,
)
from exppoly.nevlab import (
    ExpPolyFunction,
    characteristic,
    first_main_check,
    gcd_smallness_check,
    jensen_check,
    smt_moving_check,
    trunborel_check,
    zeros_in_disk,
)
from exppoly.ratfunc import RatFunc
from exppoly.scalars import GaussianRational
from exppoly.units import UnitBasis
from exppoly.ypoly import MonicYPoly, discriminant, extract_roots
from exppoly.zpoly import ZPoly

Z = ZPoly.variable()


def _report(number: int, description: str, ok: bool, detail: str = ""):
    verdict = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"{verdict} criterion {number}: {description}{suffix}")
    assert ok, f"criterion {number} failed: {description} {suffix}"


def test_criterion_1_characteristic_oracle():
    f = ExpPolyFunction.from_text("exp[z]")
    worst = 0.0
    for r in (5.0, 10.0, 20.0):
        expected = r / math.pi
        worst = max(worst, abs(characteristic(f, r) - expected) / expected)
    g = ExpPolyFunction.from_text("exp[z^2]")
    for r in (3.0, 5.0, 8.0):
        expected = r * r / math.pi
        worst = max(worst, abs(characteristic(g, r) - expected) / expected)
    _report(
        1,
        "characteristic matches closed forms within 1%",
        worst <= 0.01,
        f"max rel err {worst:.2e}",
    )


def test_criterion_2_zero_count_oracle():
    f = ExpPolyFunction.from_text("exp[z] - 1")
    records = zeros_in_disk(f, 20.0)
    ok = len(records) == 7 and all(rec.multiplicity == 1 for rec in records)
    worst = 0.0
    if ok:
        for rec in records:
            k = round(rec.location.imag / (2 * math.pi))
            worst = max(worst, abs(rec.location - 2j * math.pi * k))
        ok = ok and worst <= 1e-9 and {round(r.location.imag / (2 * math.pi)) for r in records} == set(range(-3, 4))
    _, _, jensen_diff = jensen_check(f, 20.0)
    ok = ok and abs(jensen_diff) <= 1e-4
    _report(
        2,
        "7 simple zeros of exp(z)-1 in |z|<=20 located to 1e-9, Jensen to 1e-4",
        ok,
        f"count {len(records)}, max err {worst:.1e}, jensen {jensen_diff:.1e}",
    )


def test_criterion_3_first_main_theorem():
    f = ExpPolyFunction.from_text("exp[z]")
    grid = [float(r) for r in np.linspace(5, 50, 10)]
    report = first_main_check(f, 1, grid, oscillation_bound=1.0)
    _report(
        3,
        "first main theorem oscillation <= 1.0 on r in [5, 50]",
        report.passed,
        f"oscillation {report.metadata['oscillation']:.4f}",
    )


def test_criterion_4_smt_instance():
    body, basis = parse_function("exp[z] + exp[i*z] + exp[z^2]")
    report = smt_moving_check(body, basis, [2.0, 4.0, 6.0, 8.0], eps=0.05, eps_lower=0.1)
    ratios_hi = report.lhs[-2:]
    ratios_lo = report.metadata["N1_over_T"][-2:]
    ok = report.passed and max(ratios_hi) <= 0.05 and min(ratios_lo) >= 0.9
    _report(
        4,
        "second-main-theorem instance: (N-N1)/T <= 0.05 and N1/T >= 0.9 at top radii",
        ok,
        f"(N-N1)/T {max(ratios_hi):.4f}, N1/T {min(ratios_lo):.4f}",
    )


def test_criterion_5_gcd_smallness_instance():
    (bf, bg), basis = lower_functions(["exp[z] + 1", "exp[z^2] + 1"])
    grid = [2.0, 4.0, 6.0, 8.0, 10.0]
    report = gcd_smallness_check(bf, bg, basis, grid)
    ok = report.passed and all(x == 0.0 for x in report.lhs)
    _report(
        5,
        "gcd counting ratio identically 0 for exp[z]+1 vs exp[z^2]+1 up to r=10",
        ok,
        f"ratios {list(report.lhs)}",
    )


def test_criterion_6_truncated_borel_instance():
    bodies, basis = lower_functions(["exp[z^2]", "exp[z]", "1"])
    report = trunborel_check(bodies, basis, [2.0, 4.0, 6.0, 8.0])
    ratio = report.metadata["N_trunc_per_function"][3][-1] / report.lhs[-1]
    ok = report.passed and 0.9 <= ratio <= 1.05
    _report(
        6,
        "truncated Borel instance: N^(2) of the closing function ~ T at r=8",
        ok,
        f"ratio {ratio:.4f}",
    )


def _random_coef(rng):
    pick = rng.randrange(4)
    if pick == 0:
        return RatFunc(rng.randint(1, 5))
    if pick == 1:
        return RatFunc(GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2) or 1))
    if pick == 2:
        return RatFunc(Z + rng.randint(-2, 2))
    return RatFunc(Z.scale(rng.randint(1, 3)))


def _random_laurent(rng, arity=2, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(-2, 2) for _ in range(arity))
        terms[exps] = _random_coef(rng)
    return LaurentPoly(arity, terms)


def test_criterion_7_symbolic_exactness():
    basis = UnitBasis([Z * Z, Z])
    rng = random.Random(2024)
    product_rule_ok = 0
    for _ in range(200):
        f = _random_laurent(rng)
        g = _random_laurent(rng)
        if (f * g).derive(basis) == f.derive(basis) * g + f * g.derive(basis):
            product_rule_ok += 1
    u1 = LaurentPoly.variable(2, 0)
    u2 = LaurentPoly.variable(2, 1)
    zc = LaurentPoly.constant(2, RatFunc(Z))
    reassembly_ok = 0
    for _ in range(100):
        pool = [
            u1 + rng.randint(1, 5),
            u2 - rng.randint(1, 5),
            u1 + u2 + rng.randint(1, 3),
            u1 - zc.scale(rng.randint(1, 3)),
            u1 * u2 + rng.randint(2, 4),
        ]
        rng.shuffle(pool)
        f = LaurentPoly.one(2)
        for factor in pool[: rng.randint(1, 2)]:
            f = f * factor ** rng.randint(1, 3)
        parts = squarefree_decompose(f)
        rebuilt = LaurentPoly.one(2)
        for part, mult in parts:
            rebuilt = rebuilt * part**mult
        if laurent_divexact(f, rebuilt).is_monomial() and all(
            is_squarefree(p) for p, _ in parts
        ):
            reassembly_ok += 1
    critical_ok = 0
    for _ in range(50):
        pool = [
            u1 - rng.randint(1, 7),
            u2 + rng.randint(1, 7),
            u1 + u2 - rng.randint(1, 4),
            u2 - zc.scale(rng.randint(1, 3)),
        ]
        rng.shuffle(pool)
        count = rng.randint(1, 3)
        f = LaurentPoly.one(2)
        for factor in pool[:count]:
            f = f * factor ** rng.randint(1, 2)
        _, _, g = critical_pair(f, basis)
        if g.is_one():
            critical_ok += 1
    ok = product_rule_ok == 200 and reassembly_ok == 100 and critical_ok == 50
    _report(
        7,
        "200 product-rule, 100 square-free reassembly, 50 critical-pair cases exact",
        ok,
        f"{product_rule_ok}/200, {reassembly_ok}/100, {critical_ok}/50",
    )


def test_criterion_8_root_extraction():
    F1, b1 = parse_ypoly("Y^2 - 2*z*Y + z^2 - exp[2*z]")
    roots1, final1 = extract_roots(F1, b1)
    v = LaurentPoly.variable(1, 0)
    zc = LaurentPoly.constant(1, RatFunc(Z))
    expected1 = {_key(zc + v), _key(zc - v)}
    ok1 = final1.frequencies == (Z,) and {_key(r) for r in roots1} == expected1

    F2, b2 = parse_ypoly("Y^2 - exp[2*z]")
    roots2, final2 = extract_roots(F2, b2)
    ok2 = final2.frequencies == (Z,) and {_key(r) for r in roots2} == {_key(v), _key(-v)}

    F3, b3 = parse_ypoly("Y^2 - z")
    roots3, _ = extract_roots(F3, b3)
    ok3 = roots3 == []

    # exact substitution for every returned root, in the refined basis
    verified = True
    for F, basis, roots, final in ((F1, b1, roots1, final1), (F2, b2, roots2, final2)):
        factor = int((basis.frequencies[0].leading() / final.frequencies[0].leading()).re)
        embedded = F.map_coefficients(lambda c: c.rescale_exponents(0, factor))
        for root in roots:
            if not embedded.evaluate(root).is_zero():
                verified = False
    ok = ok1 and ok2 and ok3 and verified
    _report(
        8,
        "root extraction returns {z±exp[z]}, {±exp[z]} (refined), and [] for Y^2-z",
        ok,
        f"cases {ok1}, {ok2}, {ok3}, verified {verified}",
    )


def _key(poly: LaurentPoly):
    return tuple(sorted((e, c) for e, c in poly.terms.items()))


def test_criterion_9_discriminant_specialization():
    rng = random.Random(4096)
    basis = UnitBasis([Z])
    passed = 0
    attempts = 0
    while passed < 20 and attempts < 80:
        attempts += 1
        coeffs = [_random_laurent(rng, arity=1, max_terms=2) for _ in range(3)]
        F = MonicYPoly(1, coeffs)
        delta = discriminant(F)
        if delta.is_zero():
            continue
        z0 = complex(Fraction(rng.randint(-8, 8), 9))
        cs = [complex(ExpPolyFunction(c, basis)(z0)) for c in coeffs]
        roots = np.roots([1.0, cs[2], cs[1], cs[0]])
        numeric = 1.0 + 0j
        for i in range(3):
            for j in range(i + 1, 3):
                numeric *= (roots[i] - roots[j]) ** 2
        symbolic = complex(ExpPolyFunction(delta, basis)(z0))
        if abs(symbolic - numeric) <= 5e-10 * max(abs(symbolic), abs(numeric)):
            passed += 1
    _report(
        9,
        "20 randomized cubic discriminants match companion-matrix roots to 10 digits",
        passed == 20,
        f"{passed}/20 in {attempts} attempts",
    )
