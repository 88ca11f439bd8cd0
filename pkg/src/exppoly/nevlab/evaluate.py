"""Numeric view of symbolic exponential polynomials.

An ExpPolyFunction wraps a Laurent polynomial over a unit basis and evaluates
it at complex points (scalars or numpy arrays).  Derivatives are exact: they
come from the symbolic derivation, never from finite differences.
"""

from __future__ import annotations

import numpy as np

from ..expr import parse_function
from ..laurent import LaurentPoly
from ..ratfunc import RatFunc
from ..scalars import GaussianRational
from ..units import UnitBasis
from ..zpoly import ZPoly


def _np_coeffs(poly: ZPoly) -> np.ndarray:
    """Highest-degree-first complex coefficients for np.polyval."""
    if poly.is_zero():
        return np.array([0.0 + 0.0j])
    return np.array([complex(c) for c in reversed(poly.coeffs)])


class ExpPolyFunction:
    """Callable sum of coefficient(z) * exp(combined frequency(z)) terms."""

    def __init__(self, body: LaurentPoly, basis: UnitBasis):
        if body.arity != basis.arity:
            raise ValueError("body arity does not match basis")
        self.body = body
        self.basis = basis
        self._derivative: "ExpPolyFunction | None" = None
        self._compiled = []
        for exps, coef in body.sorted_terms():
            combined = ZPoly.zero()
            for j, k in enumerate(exps):
                if k:
                    combined = combined + basis.frequencies[j].scale(k)
            self._compiled.append(
                (_np_coeffs(coef.num), _np_coeffs(coef.den), _np_coeffs(combined))
            )

    @classmethod
    def from_text(cls, text: str) -> "ExpPolyFunction":
        return cls(*parse_function(text))

    # -- evaluation -------------------------------------------------------

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        total = np.zeros_like(z)
        for num, den, freq in self._compiled:
            total = total + np.polyval(num, z) / np.polyval(den, z) * np.exp(
                np.polyval(freq, z)
            )
        return total if total.shape else complex(total)

    def log_magnitude(self, z):
        """log|f(z)| computed with overflow-safe per-term scaling."""
        value = self(np.asarray(z, dtype=complex))
        with np.errstate(divide="ignore"):
            return np.log(np.abs(value))

    def magnitude_scale(self, z):
        """Sum of term magnitudes: the cancellation-noise scale at z (float
        rounding noise in f(z) is roughly machine epsilon times this)."""
        z = np.asarray(z, dtype=complex)
        total = np.zeros(z.shape, dtype=float)
        for num, den, freq in self._compiled:
            total = total + np.abs(
                np.polyval(num, z) / np.polyval(den, z) * np.exp(np.polyval(freq, z))
            )
        return total if total.shape else float(total)

    # -- structure ---------------------------------------------------------

    def derivative(self) -> "ExpPolyFunction":
        if self._derivative is None:
            self._derivative = ExpPolyFunction(self.body.derive(self.basis), self.basis)
        return self._derivative

    def is_zero_function(self) -> bool:
        return self.body.is_zero()

    def shifted(self, a) -> "ExpPolyFunction":
        """f - a for an exact scalar a (same derivative as f)."""
        a = a if isinstance(a, (GaussianRational, RatFunc)) else GaussianRational(a)
        return ExpPolyFunction(self.body - LaurentPoly.constant(self.body.arity, a), self.basis)

    def denominator_lcm(self) -> ZPoly:
        from ..zpoly import poly_lcm

        denom = ZPoly.one()
        for _, coef in self.body.terms.items():
            denom = poly_lcm(denom, coef.den)
        return denom

    def coefficient_pole_candidates(self) -> list[complex]:
        """Roots of the common coefficient denominator (numeric, deduplicated)."""
        denom = self.denominator_lcm()
        if denom.degree < 1:
            return []
        coeffs = _np_coeffs(denom)
        roots = np.roots(coeffs)
        out: list[complex] = []
        for r in roots:
            if not any(abs(r - s) < 1e-9 * (1 + abs(s)) for s in out):
                out.append(complex(r))
        return sorted(out, key=lambda w: (abs(w), np.angle(w) % (2 * np.pi)))

    def order_upper_bound(self) -> int:
        """Max frequency degree among terms actually present."""
        best = 0
        for exps in self.body.terms:
            for j, k in enumerate(exps):
                if k:
                    best = max(best, self.basis.frequencies[j].degree)
        return best

    def __repr__(self) -> str:
        return f"ExpPolyFunction({self.body!r})"
