"""Inequality-verification harness.

Each check consumes exact symbolic inputs, evaluates both sides of one of the
value-distribution inequalities on an r-grid, and emits a CheckReport with
per-radius margins.  Asymptotic claims (the ones holding outside exceptional
sets) are judged as trend assertions on the top half of the grid, never
pointwise everywhere; thresholds are recorded in the report metadata.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import NumericError
from ..jacobian import euler_identity_holds, jacobian_matrix, total_degree
from ..laurent import LaurentPoly, is_squarefree, laurent_gcd
from ..ratfunc import RatFunc
from ..scalars import GaussianRational
from ..units import UnitBasis
from ..ypoly import resultant as y_resultant
from .evaluate import ExpPolyFunction
from .nevanlinna import (
    characteristic,
    characteristic_map,
    counting_function,
    gcd_counting,
    pole_records,
    proximity,
    proximity_inverse,
    raw_count,
    _circle_mean,
)
from .zeros import scan_disk

DEFAULT_EPS = 0.05
DEFAULT_OSCILLATION = 1.0


@dataclass(frozen=True)
class CheckReport:
    name: str
    r_grid: tuple[float, ...]
    lhs: tuple[float, ...]
    rhs: tuple[float, ...]
    margin: tuple[float, ...]
    verdicts: tuple[bool, ...]
    passed: bool
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from ..serialize import fmt_float

        return {
            "check": self.name,
            "r_grid": [fmt_float(x) for x in self.r_grid],
            "lhs": [fmt_float(x) for x in self.lhs],
            "rhs": [fmt_float(x) for x in self.rhs],
            "margin": [fmt_float(x) for x in self.margin],
            "verdicts": list(self.verdicts),
            "passed": self.passed,
            "metadata": _json_safe(self.metadata),
        }

    def csv_rows(self) -> list[dict]:
        rows = []
        for i, r in enumerate(self.r_grid):
            rows.append(
                {
                    "r": r,
                    "lhs": self.lhs[i],
                    "rhs": self.rhs[i],
                    "margin": self.margin[i],
                    "verdict": int(self.verdicts[i]),
                }
            )
        return rows


def _json_safe(value):
    from ..serialize import fmt_float

    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, float):
        return fmt_float(value)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def _top_half(n: int) -> range:
    return range(n // 2, n)


# ---------------------------------------------------------------------------
# First Main Theorem
# ---------------------------------------------------------------------------


def first_main_check(
    f: ExpPolyFunction,
    a,
    grid: Sequence[float],
    oscillation_bound: float = DEFAULT_OSCILLATION,
) -> CheckReport:
    """m_f(a, r) + N_f(a, r) - T_f(r) must oscillate within a bounded band."""
    a = a if isinstance(a, GaussianRational) else GaussianRational(a)
    shifted = f.shifted(a)
    lhs, rhs = [], []
    for r in grid:
        scan = scan_disk(shifted, r)
        m = proximity_inverse(f, a, scan.radius)
        n = counting_function(scan.records, scan.radius)
        lhs.append(m + n)
        rhs.append(characteristic(f, scan.radius))
    margins = [x - y for x, y in zip(lhs, rhs)]
    oscillation = max(margins) - min(margins)
    ok = oscillation <= oscillation_bound
    return CheckReport(
        "first_main",
        tuple(grid),
        tuple(lhs),
        tuple(rhs),
        tuple(margins),
        tuple([ok] * len(grid)),
        ok,
        {"oscillation": oscillation, "bound": oscillation_bound, "a": str(a)},
    )


# ---------------------------------------------------------------------------
# Logarithmic derivative
# ---------------------------------------------------------------------------


def logderiv_check(
    f: ExpPolyFunction,
    grid: Sequence[float],
    slack: float = 5.0,
) -> CheckReport:
    """m_{f'/f} against log T_f, plus the T_{f'/f}/T_f smallness ratio."""
    fp = f.derivative()
    lhs, rhs, t_ratio = [], [], []
    for r in grid:
        scan = scan_disk(f, r)
        radius = scan.radius

        def integrand(theta):
            z = radius * np.exp(1j * theta)
            fv = f(z)
            return np.maximum(0.0, np.log(np.abs(fp(z) / fv)))

        m_log = _circle_mean(integrand, 1e-6)
        T = characteristic(f, radius)
        n1_zeros = counting_function(scan.records, radius, 1)
        n1_poles = counting_function(pole_records(f, radius), radius, 1)
        T_ratio_val = (m_log + n1_zeros + n1_poles) / T if T > 0 else math.inf
        lhs.append(m_log)
        rhs.append(math.log(T) if T > 1 else 0.0)
        t_ratio.append(T_ratio_val)
    margins = [x - y for x, y in zip(lhs, rhs)]
    verdicts = [m <= slack for m in margins]
    top = _top_half(len(grid))
    ok = all(verdicts[i] for i in top)
    return CheckReport(
        "logderiv",
        tuple(grid),
        tuple(lhs),
        tuple(rhs),
        tuple(margins),
        tuple(verdicts),
        ok,
        {"slack": slack, "T_ratio": [float(x) for x in t_ratio]},
    )


# ---------------------------------------------------------------------------
# Truncated Borel-type second main theorem
# ---------------------------------------------------------------------------


def trunborel_check(
    bodies: Sequence[LaurentPoly],
    basis: UnitBasis,
    grid: Sequence[float],
    log_coefficient: float = 5.0,
    slack: float = 0.5,
) -> CheckReport:
    """For entire f_0..f_n and f_{n+1} = -(f_0+...+f_n) with no vanishing
    proper subsum: T of the map vs the sum of n-truncated counting functions."""
    n_plus_1 = len(bodies)
    if n_plus_1 < 2:
        raise ValueError("need at least two components")
    arity = bodies[0].arity
    total = LaurentPoly.zero(arity)
    for b in bodies:
        total = total + b
    closing = -total
    family = list(bodies) + [closing]
    level = n_plus_1 - 1
    _assert_no_vanishing_subsum(family)
    functions = [ExpPolyFunction(b, basis) for b in family]
    map_functions = functions[:-1]
    lhs, rhs = [], []
    per_function = [[] for _ in family]
    for r in grid:
        scans = []
        for fn in functions:
            if fn.body.is_monomial():
                scans.append(None)
            else:
                scans.append(scan_disk(fn, r))
        _spot_check_common_zeros(functions, scans)
        T = characteristic_map(map_functions, r)
        truncated_sum = 0.0
        for idx, scan in enumerate(scans):
            value = (
                counting_function(scan.records, scan.radius, level) if scan else 0.0
            )
            per_function[idx].append(value)
            truncated_sum += value
        lhs.append(T)
        rhs.append(truncated_sum + log_coefficient * max(0.0, math.log(max(T, 1.0))))
    margins = [y - x for x, y in zip(lhs, rhs)]
    verdicts = [m >= -slack for m in margins]
    top = _top_half(len(grid))
    ok = all(verdicts[i] for i in top)
    return CheckReport(
        "trunborel",
        tuple(grid),
        tuple(lhs),
        tuple(rhs),
        tuple(margins),
        tuple(verdicts),
        ok,
        {
            "truncation_level": level,
            "log_coefficient": log_coefficient,
            "slack": slack,
            "N_trunc_per_function": [list(v) for v in per_function],
        },
    )


def _assert_no_vanishing_subsum(family: Sequence[LaurentPoly]) -> None:
    indices = range(len(family))
    arity = family[0].arity
    for size in range(1, len(family)):
        for subset in itertools.combinations(indices, size):
            total = LaurentPoly.zero(arity)
            for i in subset:
                total = total + family[i]
            if total.is_zero():
                raise NumericError(
                    f"proper subsum {subset} vanishes identically: hypothesis fails"
                )


def _spot_check_common_zeros(functions, scans) -> None:
    for idx, scan in enumerate(scans):
        if scan is None:
            continue
        others = [fn for j, fn in enumerate(functions) if j != idx]
        for rec in scan.records[:8]:
            values = [abs(complex(fn(rec.location))) for fn in others]
            if max(values) < 1e-12:
                raise NumericError(
                    f"components appear to share a zero near {rec.location}"
                )


# ---------------------------------------------------------------------------
# Second main theorem instance for units (truncation level 1)
# ---------------------------------------------------------------------------


def smt_moving_check(
    body: LaurentPoly,
    basis: UnitBasis,
    grid: Sequence[float],
    eps: float = DEFAULT_EPS,
    eps_lower: float = 0.1,
) -> CheckReport:
    """For homogeneous G with no repeated nonmonomial factor evaluated on
    independent units: (N - N^(1))/T stays below eps and N^(1)/T reaches
    deg(G) * (1 - eps_lower) at the largest radii."""
    basis.require_independent()
    if not is_squarefree(body):
        raise NumericError("polynomial has a repeated nonmonomial factor")
    degree = total_degree(body)
    endpoints_ok = _endpoints_nonzero(body)
    units = [
        ExpPolyFunction(LaurentPoly.variable(basis.arity, j), basis)
        for j in range(basis.arity)
    ]
    f = ExpPolyFunction(body, basis)
    lhs, rhs = [], []
    ratio_low = []
    for r in grid:
        scan = scan_disk(f, r)
        T_u = characteristic_map(units, scan.radius)
        N = counting_function(scan.records, scan.radius)
        N1 = counting_function(scan.records, scan.radius, 1)
        lhs.append((N - N1) / T_u if T_u > 0 else math.inf)
        ratio_low.append(N1 / T_u if T_u > 0 else 0.0)
        rhs.append(eps)
    margins = [y - x for x, y in zip(lhs, rhs)]
    n = len(grid)
    largest_two = range(max(0, n - 2), n)
    verdicts = []
    for i in range(n):
        ok_i = lhs[i] <= eps
        if endpoints_ok and i in largest_two:
            ok_i = ok_i and ratio_low[i] >= degree * (1.0 - eps_lower)
        verdicts.append(ok_i)
    ok = all(verdicts[i] for i in largest_two)
    return CheckReport(
        "smt_moving",
        tuple(grid),
        tuple(lhs),
        tuple(rhs),
        tuple(margins),
        tuple(verdicts),
        ok,
        {
            "eps": eps,
            "eps_lower": eps_lower,
            "degree": degree,
            "endpoints_nonzero": endpoints_ok,
            "N1_over_T": [float(x) for x in ratio_low],
        },
    )


def _endpoints_nonzero(body: LaurentPoly) -> bool:
    """G(1,0,...,0), ..., G(0,...,0,1) nonzero: the pure-power coefficient of
    each variable must be present."""
    degree = total_degree(body)
    for j in range(body.arity):
        exps = [0] * body.arity
        exps[j] = degree
        if tuple(exps) not in body.terms:
            return False
    return True


# ---------------------------------------------------------------------------
# GCD smallness for coprime polynomials in independent units
# ---------------------------------------------------------------------------


def gcd_smallness_check(
    body_f: LaurentPoly,
    body_g: LaurentPoly,
    basis: UnitBasis,
    grid: Sequence[float],
    eps: float = DEFAULT_EPS,
) -> CheckReport:
    """N_gcd(F(u), G(u), r) / max_j T_{u_j}(r) must fall below eps."""
    basis.require_independent()
    g = laurent_gcd(body_f, body_g)
    if not g.is_one():
        raise NumericError("polynomials are not coprime; gcd has positive degree")
    f_fn = ExpPolyFunction(body_f, basis)
    g_fn = ExpPolyFunction(body_g, basis)
    units = [
        ExpPolyFunction(LaurentPoly.variable(basis.arity, j), basis)
        for j in range(basis.arity)
    ]
    lhs, rhs = [], []
    for r in grid:
        n_gcd = gcd_counting(f_fn, g_fn, r)
        t_max = max(characteristic(u, r) for u in units)
        lhs.append(n_gcd / t_max if t_max > 0 else math.inf)
        rhs.append(eps)
    margins = [y - x for x, y in zip(lhs, rhs)]
    verdicts = [m >= 0 for m in margins]
    top = _top_half(len(grid))
    ok = all(verdicts[i] for i in top)
    return CheckReport(
        "gcd_smallness",
        tuple(grid),
        tuple(lhs),
        tuple(rhs),
        tuple(margins),
        tuple(verdicts),
        ok,
        {"eps": eps, "coprime": True},
    )


# ---------------------------------------------------------------------------
# d-th power obstruction
# ---------------------------------------------------------------------------


def dpower_obstruction_check(
    body: LaurentPoly,
    basis: UnitBasis,
    grid: Sequence[float],
    power: int = 2,
    eps: float = DEFAULT_EPS,
) -> CheckReport:
    """N_gcd(F(u), derive(F)(u), r) / max T_{u_j} small: any representation
    F(u) = alpha * g^d then forces N_g to be small (reported bound)."""
    basis.require_independent()
    if not is_squarefree(body):
        raise NumericError("polynomial has a repeated nonmonomial factor")
    derived = body.derive(basis)
    f_fn = ExpPolyFunction(body, basis)
    d_fn = ExpPolyFunction(derived, basis)
    units = [
        ExpPolyFunction(LaurentPoly.variable(basis.arity, j), basis)
        for j in range(basis.arity)
    ]
    lhs, rhs, implied = [], [], []
    for r in grid:
        n_gcd = gcd_counting(f_fn, d_fn, r)
        t_max = max(characteristic(u, r) for u in units)
        lhs.append(n_gcd / t_max if t_max > 0 else math.inf)
        rhs.append(eps)
        implied.append(n_gcd / max(power - 1, 1))
    margins = [y - x for x, y in zip(lhs, rhs)]
    verdicts = [m >= 0 for m in margins]
    top = _top_half(len(grid))
    ok = all(verdicts[i] for i in top)
    return CheckReport(
        "dpower_obstruction",
        tuple(grid),
        tuple(lhs),
        tuple(rhs),
        tuple(margins),
        tuple(verdicts),
        ok,
        {"eps": eps, "power": power, "implied_N_g_bound": [float(x) for x in implied]},
    )


# ---------------------------------------------------------------------------
# Transversality of a homogeneous system at a sample point
# ---------------------------------------------------------------------------


def transversality_check(
    polys: Sequence[LaurentPoly],
    z0,
    tol: float = 1e-8,
) -> CheckReport:
    """At the exact sample z0: Euler identities hold symbolically, no point
    lies on all n+1 divisors, and at every intersection of n divisors the
    n x (n+1) Jacobian has full rank (transversal crossing)."""
    z0 = z0 if isinstance(z0, GaussianRational) else GaussianRational(z0)
    arity = polys[0].arity
    n = arity - 1
    if len(polys) != arity:
        raise NumericError(f"need {arity} polynomials for P^{n}")
    if n not in (1, 2):
        raise NumericError("transversality check implemented for n = 1, 2 only")
    euler = [euler_identity_holds(p) for p in polys]
    specialized = [_specialize_coeffs(p, z0) for p in polys]
    matrix = jacobian_matrix(polys)
    spec_matrix = [[_specialize_coeffs(q, z0) for q in row] for row in matrix]
    margins, names = [], []
    all_points = {}
    for subset in itertools.combinations(range(len(polys)), n):
        points = _intersection_points([specialized[i] for i in subset])
        all_points[subset] = points
        for point in points:
            jac = np.array(
                [
                    [_eval_xpoly(spec_matrix[i][j], point) for j in range(arity)]
                    for i in subset
                ]
            )
            scale = max(np.max(np.abs(jac)), 1e-30)
            smallest = np.linalg.svd(jac / scale, compute_uv=False)[-1]
            margins.append(float(smallest))
            names.append(f"D{subset}@{point}")
    # no common point of all n+1 divisors
    common_ok = True
    for subset, points in all_points.items():
        others = [i for i in range(len(polys)) if i not in subset]
        for point in points:
            values = [abs(_eval_xpoly(specialized[i], point)) for i in others]
            if values and max(values) < tol:
                common_ok = False
    verdicts = [m > tol for m in margins]
    ok = all(verdicts) and all(euler) and common_ok
    return CheckReport(
        "transversality",
        tuple(float(i) for i in range(len(margins))),
        tuple(margins),
        tuple([tol] * len(margins)),
        tuple(m - tol for m in margins),
        tuple(verdicts),
        ok,
        {
            "euler_identities": euler,
            "no_common_point": common_ok,
            "points": {str(k): [str(p) for p in v] for k, v in all_points.items()},
            "z0": str(z0),
            "tol": tol,
        },
    )


def _specialize_coeffs(poly: LaurentPoly, z0: GaussianRational) -> LaurentPoly:
    terms = {}
    for e, c in poly.terms.items():
        value = c.eval_scalar(z0)
        terms[e] = RatFunc(value)
    return LaurentPoly(poly.arity, terms)


def _eval_xpoly(poly: LaurentPoly, point: tuple[complex, ...]) -> complex:
    total = 0j
    for e, c in poly.terms.items():
        term = complex(c.num.coefficient(0)) if c.num.is_constant() else complex(
            c.eval_complex(0j)
        )
        for x, k in zip(point, e):
            term *= x**k
        total += term
    return total


def _binary_form_roots(poly: LaurentPoly, var_pair=(0, 1)) -> list[tuple[complex, complex]]:
    """Projective roots (x_a : x_b) of a binary form, numerically."""
    a, b = var_pair
    degree = total_degree(poly)
    coeffs = np.zeros(degree + 1, dtype=complex)
    for e, c in poly.terms.items():
        coeffs[e[b]] += complex(c.eval_complex(0j))
    points = []
    trimmed = np.trim_zeros(coeffs, "b")
    drop = degree + 1 - len(trimmed)
    if drop > 0:
        points.append((0.0 + 0j, 1.0 + 0j))
    poly_coeffs = trimmed[::-1]
    if len(poly_coeffs) > 1:
        for t in np.roots(poly_coeffs):
            norm = math.hypot(abs(t), 1.0)
            points.append((1.0 / norm + 0j * 0, complex(t) / norm))
    return points


def _intersection_points(specialized: list[LaurentPoly]) -> list[tuple[complex, ...]]:
    arity = specialized[0].arity
    if len(specialized) == 1 and arity == 2:
        return [tuple(p) for p in _binary_form_roots(specialized[0])]
    if len(specialized) == 2 and arity == 3:
        return _surface_pair_intersections(specialized[0], specialized[1])
    raise NumericError("unsupported intersection configuration")


def _surface_pair_intersections(Fa: LaurentPoly, Fb: LaurentPoly) -> list[tuple[complex, ...]]:
    """Common zeros in P^2 of two homogeneous curves, by exact elimination of
    x2 followed by numeric root extraction and verification."""
    coeffs_a = _coeffs_in_variable(Fa, 2)
    coeffs_b = _coeffs_in_variable(Fb, 2)
    eliminant = y_resultant(coeffs_a, coeffs_b)
    if eliminant.is_zero():
        raise NumericError("curves share a component: intersection is not finite")
    points = []
    for x0, x1 in _binary_form_roots(eliminant, (0, 1)):
        candidates = _x2_candidates(coeffs_a, x0, x1)
        if candidates is None:
            candidates = _x2_candidates(coeffs_b, x0, x1)
        if candidates is None:
            raise NumericError("divisors share the whole line above a root")
        for x2 in candidates:
            point = (x0, x1, complex(x2))
            norm = math.sqrt(sum(abs(x) ** 2 for x in point))
            point = tuple(x / norm for x in point)
            if abs(_eval_xpoly(Fb, point)) < 1e-7 and abs(_eval_xpoly(Fa, point)) < 1e-7:
                points.append(point)
    # the chart above misses only (0, 0, 1)
    corner = (0j, 0j, 1 + 0j)
    if (
        abs(_eval_xpoly(Fa, corner)) < 1e-14
        and abs(_eval_xpoly(Fb, corner)) < 1e-14
    ):
        points.append(corner)
    return points


def _x2_candidates(coeffs, x0: complex, x1: complex) -> list[complex] | None:
    """Roots in x2 of one curve restricted to the line (x0 : x1 : *); None
    when the restriction vanishes identically."""
    values = np.array([_eval_xpoly(c, (x0, x1, 1.0)) for c in coeffs], dtype=complex)
    scale = np.abs(values).max()
    if scale < 1e-14:
        return None
    trimmed = np.trim_zeros(values, "b")
    if len(trimmed) == 1:
        return []
    return [complex(r) for r in np.roots(trimmed[::-1])]


def _coeffs_in_variable(poly: LaurentPoly, var: int) -> list[LaurentPoly]:
    degree = max(e[var] for e in poly.terms)
    out = [dict() for _ in range(degree + 1)]
    for e, c in poly.terms.items():
        reduced = list(e)
        reduced[var] = 0
        out[e[var]][tuple(reduced)] = c
    return [LaurentPoly(poly.arity, terms) for terms in out]
