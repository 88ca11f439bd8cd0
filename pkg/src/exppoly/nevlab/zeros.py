"""Certified zero localization inside a disk via the argument principle.

The disk count comes from one outer winding integral; individual zeros are
isolated by an adaptive rectangle subdivision whose per-cell winding numbers
are certified integers, then polished by Newton iteration with the known
multiplicity.  All winding integrands use f'/f with the exact symbolic
derivative.  The sum of located multiplicities must reproduce the outer
winding, otherwise the scan aborts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import BoundaryClearanceError, WindingError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_TWO_PI = 2.0 * math.pi

# Split ratios tried in turn when a subdivision line lands on a zero.
_SPLIT_RATIOS = ((0.5, 0.5), (0.5379, 0.4621), (0.4613, 0.5417), (0.5271, 0.5323))
_BOX_MARGINS = (1.00311, 1.00523, 1.00871, 1.01243)


@dataclass(frozen=True)
class ZeroRecord:
    location: complex
    multiplicity: int
    enclosure_radius: float
    residual: float

    def sort_key(self):
        angle = cmath.phase(self.location) % _TWO_PI
        return (abs(self.location), angle)


@dataclass(frozen=True)
class DiskScan:
    records: tuple[ZeroRecord, ...]
    radius: float
    winding: int


def zeros_in_disk(f, r: float, tol: float = 1e-10) -> list[ZeroRecord]:
    """Complete list of zeros with multiplicities in the (possibly nudged)
    closed disk of radius r."""
    return list(scan_disk(f, r, tol).records)


def scan_disk(f, r: float, tol: float = 1e-10) -> DiskScan:
    if f.is_zero_function():
        raise ValueError("cannot scan zeros of the zero function")
    fp = f.derivative()
    last_error: Exception | None = None
    for radius in _radius_candidates(r):
        try:
            total = _circle_winding(f, fp, 0j, radius)
            records = _locate(f, fp, radius, total, tol)
        except WindingError as err:
            last_error = err
            continue
        if any(abs(abs(rec.location) - radius) < 2e-4 * radius for rec in records):
            last_error = WindingError("zero too close to the boundary")
            continue
        inside = [rec for rec in records if abs(rec.location) <= radius]
        if sum(rec.multiplicity for rec in inside) != total:
            raise WindingError(
                f"located multiplicities do not reproduce the disk winding {total}"
            )
        inside = _tighten_enclosures(inside)
        inside.sort(key=ZeroRecord.sort_key)
        return DiskScan(tuple(inside), radius, total)
    raise BoundaryClearanceError(
        f"no clean radius near {r} after all nudges: {last_error}"
    )


def _radius_candidates(r: float):
    yield r
    for k in range(21):
        yield r * (1.0 + 2.0**-k * 1e-3)


def _locate(f, fp, radius: float, total: int, tol: float) -> list[ZeroRecord]:
    if total == 0:
        # still run a shallow pass so zeros just outside cannot hide inside:
        # the outer winding already certifies the empty result.
        return []
    for margin in _BOX_MARGINS:
        half = radius * margin
        center = complex(radius * 2.31e-4, radius * 1.47e-4)
        box = (center.real - half, center.real + half, center.imag - half, center.imag + half)
        try:
            return _process_box(f, fp, box, radius, tol, depth=0)
        except WindingError:
            continue
    raise WindingError("subdivision failed for every root-box jitter")


def _box_intersects_disk(box, radius: float) -> bool:
    x0, x1, y0, y1 = box
    nx = min(max(0.0, x0), x1)
    ny = min(max(0.0, y0), y1)
    return math.hypot(nx, ny) <= radius


def _process_box(f, fp, box, radius: float, tol: float, depth: int) -> list[ZeroRecord]:
    if not _box_intersects_disk(box, radius):
        return []
    x0, x1, y0, y1 = box
    w = _box_winding(f, fp, box)
    if w == 0:
        return []
    if w < 0:
        raise WindingError("negative winding: unexpected pole inside a cell")
    record = _try_newton(f, fp, box, w, tol)
    if record is not None:
        return [record]
    diam = math.hypot(x1 - x0, y1 - y0)
    if depth > 60 or diam < 1e-7 * (1.0 + radius):
        raise WindingError("cannot isolate a zero cluster")
    for rx, ry in _SPLIT_RATIOS:
        xm = x0 + rx * (x1 - x0)
        ym = y0 + ry * (y1 - y0)
        children = (
            (x0, xm, y0, ym),
            (xm, x1, y0, ym),
            (x0, xm, ym, y1),
            (xm, x1, ym, y1),
        )
        try:
            out = []
            for child in children:
                out.extend(_process_box(f, fp, child, radius, tol, depth + 1))
            return out
        except WindingError:
            continue
    raise WindingError("all split jitters failed for a cell")


# ---------------------------------------------------------------------------
# Winding integrals
# ---------------------------------------------------------------------------


def _certify_integer(value: complex, slack: float = 0.12) -> int:
    real = value.real
    nearest = round(real)
    if abs(value.imag) > slack or abs(real - nearest) > slack:
        raise WindingError(f"winding {value} is not a certified integer")
    return int(nearest)


def _circle_winding(f, fp, center: complex, radius: float) -> int:
    """(1/2pi i) * contour integral of f'/f over the circle, by doubling the
    trapezoid rule (spectral for periodic integrands).  Certification needs
    two consecutive agreeing refinements landing close to an integer."""
    previous = None
    agreements = 0
    n = 64
    while n <= 2**17:
        theta = np.arange(n) * (_TWO_PI / n)
        z = center + radius * np.exp(1j * theta)
        fv = f(z)
        if np.any(fv == 0) or np.any(~np.isfinite(fv)):
            raise WindingError("f vanishes or overflows on the contour")
        integrand = fp(z) / fv * (z - center)
        estimate = complex(np.mean(integrand))
        if previous is not None and abs(estimate - previous) < 0.01:
            agreements += 1
            if agreements >= 2:
                return _certify_integer(estimate, slack=0.05)
        else:
            agreements = 0
        previous = estimate
        n *= 2
    raise WindingError("circle winding did not converge")


def _segment_integral(f, fp, a: complex, b: complex) -> complex:
    """Integral of f'/f dz along [a, b] by adaptive bisected Gauss-Legendre."""

    def quad(lo: float, hi: float) -> complex:
        mid = 0.5 * (lo + hi)
        halfw = 0.5 * (hi - lo)
        z = a + (b - a) * (mid + halfw * _GL_NODES)
        fv = f(z)
        if np.any(fv == 0) or np.any(~np.isfinite(fv)):
            raise WindingError("f vanishes on a cell edge")
        noise = 2.2e-16 * f.magnitude_scale(z)
        if np.any(np.abs(fv) < 1e2 * noise):
            raise WindingError("f indistinguishable from zero on a cell edge")
        ratio = fp(z) / fv
        if np.any(np.abs(ratio) > 1e13):
            raise WindingError("log-derivative blow-up on a cell edge")
        return complex(np.sum(_GL_WEIGHTS * ratio) * halfw * (b - a))

    def recurse(lo: float, hi: float, whole: complex, depth: int) -> complex:
        mid = 0.5 * (lo + hi)
        left = quad(lo, mid)
        right = quad(mid, hi)
        err = abs(left + right - whole)
        if err < 0.02 * (hi - lo) + 1e-12:
            return left + right
        if depth >= 14:
            raise WindingError("edge integral did not converge")
        return recurse(lo, mid, left, depth + 1) + recurse(mid, hi, right, depth + 1)

    return recurse(0.0, 1.0, quad(0.0, 1.0), 0)


def _box_winding(f, fp, box) -> int:
    x0, x1, y0, y1 = box
    corners = (
        complex(x0, y0),
        complex(x1, y0),
        complex(x1, y1),
        complex(x0, y1),
    )
    total = 0j
    for k in range(4):
        total += _segment_integral(f, fp, corners[k], corners[(k + 1) % 4])
    return _certify_integer(total / (2j * math.pi))


# ---------------------------------------------------------------------------
# Newton polishing
# ---------------------------------------------------------------------------


def _try_newton(f, fp, box, multiplicity: int, tol: float) -> ZeroRecord | None:
    x0, x1, y0, y1 = box
    diam = math.hypot(x1 - x0, y1 - y0)
    z = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
    last_step = diam
    best_step = math.inf
    stalls = 0
    converged = False
    for _ in range(80):
        fv = complex(f(z))
        fpv = complex(fp(z))
        if fpv == 0 or not math.isfinite(abs(fpv)) or not math.isfinite(abs(fv)):
            return None
        step = multiplicity * fv / fpv
        z = z - step
        last_step = abs(step)
        if not (x0 - diam <= z.real <= x1 + diam and y0 - diam <= z.imag <= y1 + diam):
            return None
        if last_step < tol * (1.0 + abs(z)):
            converged = True
            break
        # multiple zeros stall at the cancellation-noise floor; accept there
        if last_step < 0.5 * best_step:
            best_step = last_step
            stalls = 0
        else:
            stalls += 1
            if stalls >= 6 and last_step < 1e-5 * (1.0 + abs(z)):
                converged = True
                break
    if not converged:
        return None
    if not (x0 < z.real < x1 and y0 < z.imag < y1):
        return None
    base_radius = max(50 * last_step, 1e-8 * (1.0 + abs(z)))
    cap = 0.45 * min(x1 - x0, y1 - y0)
    if base_radius > cap:
        return None
    verify_radius = base_radius
    while verify_radius <= cap:
        theta = np.arange(32) * (_TWO_PI / 32)
        ring = z + verify_radius * np.exp(1j * theta)
        values = np.abs(f(ring))
        noise = 2.2e-16 * f.magnitude_scale(ring)
        if np.all(values > 1e3 * noise):
            break
        verify_radius *= 3.0
    else:
        return None
    try:
        w_local = _circle_winding(f, fp, z, verify_radius)
    except WindingError:
        return None
    if w_local != multiplicity:
        return None
    residual = abs(complex(f(z)))
    return ZeroRecord(z, multiplicity, verify_radius, residual)


def _tighten_enclosures(records: list[ZeroRecord]) -> list[ZeroRecord]:
    """Shrink enclosure radii so certified enclosures are pairwise disjoint."""
    out = []
    for i, rec in enumerate(records):
        radius = rec.enclosure_radius
        for j, other in enumerate(records):
            if i != j:
                gap = abs(rec.location - other.location) / 3.0
                radius = min(radius, gap)
        out.append(
            ZeroRecord(rec.location, rec.multiplicity, radius, rec.residual)
        )
    return out
