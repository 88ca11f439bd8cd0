"""Canonical JSON forms for the symbolic and numeric objects.

Canonical means byte-stable for equal values: terms sorted by graded-lex
exponent order, fixed key order, fixed float formatting (12 significant
digits).
"""

from __future__ import annotations

import json
from typing import Any

from .laurent import LaurentPoly
from .ratfunc import RatFunc
from .scalars import GaussianRational, render_literal
from .units import UnitBasis
from .ypoly import MonicYPoly, SeparationResult
from .zpoly import ZPoly


def fmt_float(x: float) -> float:
    """Round-trip through 12 significant digits for stable output."""
    return float(f"{x:.12g}")


def scalar_to_json(value: GaussianRational) -> str:
    return render_literal(value)


def zpoly_to_json(poly: ZPoly) -> list[str]:
    return [render_literal(c) for c in poly.coeffs]


def ratfunc_to_json(value: RatFunc) -> dict[str, Any]:
    return {"num": zpoly_to_json(value.num), "den": zpoly_to_json(value.den)}


def basis_to_json(basis: UnitBasis) -> dict[str, Any]:
    return {
        "frequencies": [zpoly_to_json(q) for q in basis.frequencies],
        "orders": list(basis.orders),
        "independent": basis.is_independent(),
        "dependence": list(basis.dependence) if basis.dependence else None,
    }


def laurent_to_json(poly: LaurentPoly) -> dict[str, Any]:
    terms = []
    for exps, coef in poly.sorted_terms():
        entry = {"exponents": list(exps)}
        entry.update(ratfunc_to_json(coef))
        terms.append(entry)
    return {"arity": poly.arity, "terms": terms}


def ypoly_to_json(F: MonicYPoly) -> dict[str, Any]:
    return {
        "degree": F.degree,
        "coefficients": [laurent_to_json(c) for c in F.coeffs],
    }


def separation_to_json(sep: SeparationResult) -> dict[str, Any]:
    return {
        "variable": sep.variable,
        "s": str(sep.s),
        "t": str(sep.t),
        "factor": sep.factor,
        "shift": laurent_to_json(sep.shift),
        "reduced": ypoly_to_json(sep.reduced),
        "refined_basis": basis_to_json(sep.refined_basis),
    }


def complex_to_json(z: complex) -> dict[str, float]:
    return {"re": fmt_float(z.real), "im": fmt_float(z.imag)}


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))
