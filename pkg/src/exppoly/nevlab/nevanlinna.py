"""Counting, proximity and characteristic functions on r-grids.

Circle integrals use the doubling trapezoid rule (spectrally accurate for
periodic integrands); zero data comes from the certified disk scans.  The
convention throughout: N with no level means multiplicities uncounted capped,
N^(Q) caps each multiplicity at Q, and the origin contributes min(Q, mult) *
log r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import NumericError, PairingError
from .evaluate import ExpPolyFunction
from .zeros import DiskScan, ZeroRecord, scan_disk

_TWO_PI = 2.0 * math.pi


def _circle_mean(fn, tol: float = 1e-7, n_start: int = 256, n_max: int = 1 << 20) -> float:
    """Mean over the unit circle parameter of a vectorized integrand."""
    previous = None
    n = n_start
    while n <= n_max:
        theta = np.arange(n) * (_TWO_PI / n)
        values = fn(theta)
        if np.any(~np.isfinite(values)):
            raise NumericError("integrand not finite on the circle")
        estimate = float(np.mean(values))
        if previous is not None and abs(estimate - previous) <= tol * max(1.0, abs(estimate)):
            return estimate
        previous = estimate
        n *= 2
    raise NumericError("circle quadrature did not converge")


# ---------------------------------------------------------------------------
# Proximity functions
# ---------------------------------------------------------------------------


def proximity(f: ExpPolyFunction, r: float, tol: float = 1e-7) -> float:
    """m_f(infinity, r): mean of log^+ |f| on the circle of radius r."""

    def integrand(theta):
        z = r * np.exp(1j * theta)
        return np.maximum(0.0, f.log_magnitude(z))

    return _circle_mean(integrand, tol)


def proximity_inverse(f: ExpPolyFunction, a, r: float, tol: float = 1e-7) -> float:
    """m of 1/(f - a): mean of log^+ 1/|f - a| on the circle."""
    g = f.shifted(a)

    def integrand(theta):
        z = r * np.exp(1j * theta)
        return np.maximum(0.0, -g.log_magnitude(z))

    return _circle_mean(integrand, tol)


def log_mean(f: ExpPolyFunction, r: float, tol: float = 1e-7) -> float:
    """Mean of log |f| on the circle (both signs)."""

    def integrand(theta):
        z = r * np.exp(1j * theta)
        return f.log_magnitude(z)

    return _circle_mean(integrand, tol)


# ---------------------------------------------------------------------------
# Counting functions
# ---------------------------------------------------------------------------


def counting_function(records, r: float, level: int | None = None) -> float:
    """Sum of min(level, mult) * log(r/|z|), origin contributing log r."""
    total = 0.0
    for rec in records:
        mult = rec.multiplicity if level is None else min(level, rec.multiplicity)
        dist = abs(rec.location)
        if dist <= 1e-9 * (1.0 + r):
            total += mult * math.log(r)
        elif dist <= r:
            total += mult * math.log(r / dist)
    return total


def raw_count(records) -> int:
    return sum(rec.multiplicity for rec in records)


# ---------------------------------------------------------------------------
# Poles of the coefficients
# ---------------------------------------------------------------------------


def pole_records(f: ExpPolyFunction, r: float) -> list[ZeroRecord]:
    """Poles of f inside the disk, located from coefficient denominators and
    certified by local winding numbers (negative order = pole)."""
    from .zeros import _circle_winding  # local winding on small circles

    candidates = [w for w in f.coefficient_pole_candidates() if abs(w) <= r]
    fp = f.derivative()
    out = []
    for w in candidates:
        radius = 1e-4 * (1.0 + abs(w))
        order = _circle_winding(f, fp, w, radius)
        if order < 0:
            out.append(ZeroRecord(w, -order, radius, math.inf))
    return out


# ---------------------------------------------------------------------------
# Characteristic functions and samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NevanlinnaSample:
    r: float
    T: float
    m: float
    N: float
    N_trunc: dict[int, float] = field(default_factory=dict)
    n_count: int = 0
    radius_used: float = 0.0


def characteristic(f: ExpPolyFunction, r: float, tol: float = 1e-7) -> float:
    """T_f(r) = m_f(infinity, r) + N over poles of f."""
    poles = pole_records(f, r)
    return proximity(f, r, tol) + counting_function(poles, r)


def sample(
    f: ExpPolyFunction, r: float, trunc_levels=(1, 2), tol: float = 1e-10
) -> NevanlinnaSample:
    """Full Nevanlinna data at one radius: T, m, zero-counting N and its
    truncations, and the raw count."""
    scan = scan_disk(f, r, tol)
    m = proximity(f, scan.radius)
    poles = pole_records(f, scan.radius)
    T = m + counting_function(poles, scan.radius)
    N = counting_function(scan.records, scan.radius)
    truncs = {q: counting_function(scan.records, scan.radius, q) for q in trunc_levels}
    return NevanlinnaSample(
        r=r,
        T=T,
        m=m,
        N=N,
        N_trunc=truncs,
        n_count=raw_count(scan.records),
        radius_used=scan.radius,
    )


def analyze(
    f: ExpPolyFunction, grid, trunc_levels=(1, 2), tol: float = 1e-10
) -> list[NevanlinnaSample]:
    return [sample(f, r, trunc_levels, tol) for r in grid]


def characteristic_map(fs, r: float, tol: float = 1e-7) -> float:
    """Cartan characteristic of a tuple of entire functions: mean of
    log max |f_i| over the circle."""

    def integrand(theta):
        z = r * np.exp(1j * theta)
        stacked = np.stack([np.abs(f(z)) for f in fs])
        best = np.max(stacked, axis=0)
        if np.any(best == 0.0):
            raise NumericError("components share a zero on the contour")
        return np.log(best)

    return _circle_mean(integrand, tol)


def jensen_check(f: ExpPolyFunction, r: float) -> tuple[float, float, float]:
    """Independent cross-check of zero completeness: the circle mean of log|f|
    must equal N_f(0, r) + log of the leading Taylor coefficient at 0."""
    scan = scan_disk(f, r)
    integral_side = log_mean(f, scan.radius, tol=1e-9)
    origin_order = 0
    for rec in scan.records:
        if abs(rec.location) <= 1e-9 * (1.0 + r):
            origin_order = rec.multiplicity
    g = f
    factorial = 1.0
    for k in range(origin_order):
        g = g.derivative()
        factorial *= k + 1
    leading = complex(g(0j)) / factorial
    counting_side = counting_function(scan.records, scan.radius) + math.log(abs(leading))
    return integral_side, counting_side, integral_side - counting_side


# ---------------------------------------------------------------------------
# Common zeros (gcd counting)
# ---------------------------------------------------------------------------


def _common_radius_scans(f, g, r: float, tol: float) -> tuple[DiskScan, DiskScan]:
    radius = r
    for _ in range(25):
        sf = scan_disk(f, radius, tol)
        if sf.radius != radius:
            radius = sf.radius
            continue
        sg = scan_disk(g, radius, tol)
        if sg.radius != radius:
            radius = sg.radius
            continue
        return sf, sg
    raise PairingError("could not find a radius clean for both functions")


def gcd_counting(f: ExpPolyFunction, g: ExpPolyFunction, r: float, tol: float = 1e-10) -> float:
    """Counting function of common zeros with minimum multiplicities."""
    sf, sg = _common_radius_scans(f, g, r, tol)
    matched = match_zero_sets(sf.records, sg.records)
    return counting_function(matched, sf.radius)


def match_zero_sets(records_f, records_g) -> list[ZeroRecord]:
    """Pair zeros whose certified enclosures identify the same point; the
    result carries min multiplicities.  Ambiguous pairings abort."""
    matched = []
    for a in records_f:
        gap = a.enclosure_radius + 1e-8 * (1.0 + abs(a.location))
        hits = [
            b
            for b in records_g
            if abs(a.location - b.location) <= gap + b.enclosure_radius
        ]
        if len(hits) > 1:
            raise PairingError(f"zero at {a.location} matches several partners")
        if hits:
            b = hits[0]
            matched.append(
                ZeroRecord(
                    a.location,
                    min(a.multiplicity, b.multiplicity),
                    a.enclosure_radius,
                    max(a.residual, b.residual),
                )
            )
    return matched


# ---------------------------------------------------------------------------
# Order estimation
# ---------------------------------------------------------------------------


def order_estimate(samples) -> float:
    """Least-squares slope of log T against log r over the top half of the
    grid; approaches the maximal frequency degree for exponential polynomials."""
    pts = [(s.r, s.T) for s in samples if s.T > 0]
    if len(pts) < 4:
        raise NumericError("order estimate needs at least 4 radii with T > 0")
    rs = [p[0] for p in pts]
    if sorted(rs) != rs or len(set(rs)) != len(rs):
        raise NumericError("degenerate grid: radii must be strictly increasing")
    top = pts[len(pts) // 2 :]
    xs = np.log([p[0] for p in top])
    ys = np.log([p[1] for p in top])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
