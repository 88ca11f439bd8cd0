"""Jacobian determinants of homogeneous polynomial systems over K = Q(i)(z).

The polynomials live in projective coordinates x_0..x_n and are represented by
LaurentPoly values with nonnegative exponents (the Laurent structure is simply
not used here).  Includes the exact Euler-identity check for homogeneity.
"""

from __future__ import annotations

from typing import Sequence

from .laurent import LaurentPoly
from .ratfunc import RatFunc


def total_degree(poly: LaurentPoly) -> int:
    if poly.is_zero():
        raise ValueError("zero polynomial has no degree")
    degrees = {sum(e) for e in poly.terms}
    if len(degrees) > 1:
        raise ValueError("polynomial is not homogeneous")
    return degrees.pop()


def is_homogeneous(poly: LaurentPoly) -> bool:
    if poly.is_zero():
        return True
    if any(x < 0 for e in poly.terms for x in e):
        return False
    return len({sum(e) for e in poly.terms}) == 1


def euler_identity_holds(poly: LaurentPoly) -> bool:
    """sum_j x_j * dF/dx_j == deg(F) * F, exactly."""
    deg = total_degree(poly)
    arity = poly.arity
    total = LaurentPoly.zero(arity)
    for j in range(arity):
        total = total + LaurentPoly.variable(arity, j) * poly.partial(j)
    return total == poly.scale(RatFunc(deg))


def jacobian_matrix(polys: Sequence[LaurentPoly]) -> list[list[LaurentPoly]]:
    if not polys:
        raise ValueError("empty polynomial system")
    arity = polys[0].arity
    for p in polys:
        if p.arity != arity:
            raise ValueError("arity mismatch in polynomial system")
    return [[p.partial(j) for j in range(arity)] for p in polys]


def jacobian_det(polys: Sequence[LaurentPoly]) -> LaurentPoly:
    """det(dF_i/dx_j) for n+1 homogeneous polynomials in x_0..x_n, exact."""
    arity = polys[0].arity
    if len(polys) != arity:
        raise ValueError(
            f"need exactly {arity} polynomials for {arity} coordinates, got {len(polys)}"
        )
    for p in polys:
        if not is_homogeneous(p):
            raise ValueError("system must be homogeneous")
    return _det(jacobian_matrix(polys))


def _det(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    arity = rows[0][0].arity
    total = LaurentPoly.zero(arity)
    for j in range(n):
        top = rows[0][j]
        if top.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = top * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def minor_det(matrix: list[list[LaurentPoly]], rows: Sequence[int], cols: Sequence[int]) -> LaurentPoly:
    sub = [[matrix[r][c] for c in cols] for r in rows]
    return _det(sub)
