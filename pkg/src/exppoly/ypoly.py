"""Monic polynomials in Y over the Laurent ring, and the root machinery:
discriminants, variable separation, rational-function roots, and the recursive
extraction of roots that are themselves exponential polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, gcd
from typing import Sequence

import mpmath

from .errors import (
    HypothesisFailure,
    NoPeelableVariable,
    RecompositionError,
    SeparationError,
)
from .laurent import LaurentPoly, is_squarefree, laurent_divexact, monomial_shape
from .ratfunc import RatFunc
from .scalars import GaussianRational
from .units import UnitBasis
from .zpoly import ZPoly, interpolate, poly_gcd, poly_lcm

YCoeffs = list[LaurentPoly]


class MonicYPoly:
    """Y^d + A_{d-1} Y^{d-1} + ... + A_0 with Laurent-polynomial coefficients."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity: int, coeffs: Sequence[LaurentPoly]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("degree must be at least 1")
        for c in coeffs:
            if c.arity != arity:
                raise ValueError("coefficient arity mismatch")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("MonicYPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def coefficient(self, k: int) -> LaurentPoly:
        """Coefficient of Y^k (the implicit leading one included)."""
        if k == self.degree:
            return LaurentPoly.one(self.arity)
        return self.coeffs[k]

    def as_list(self) -> YCoeffs:
        return list(self.coeffs) + [LaurentPoly.one(self.arity)]

    def y_derivative(self) -> YCoeffs:
        """Coefficients of dF/dY (degree d-1, leading coefficient d)."""
        out = []
        for k in range(1, self.degree):
            out.append(self.coeffs[k].scale(RatFunc(k)))
        out.append(LaurentPoly.constant(self.arity, RatFunc(self.degree)))
        return out

    def evaluate(self, value: LaurentPoly) -> LaurentPoly:
        acc = LaurentPoly.one(self.arity)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def map_coefficients(self, fn) -> "MonicYPoly":
        return MonicYPoly(fn(self.coeffs[0]).arity, [fn(c) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonicYPoly):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"MonicYPoly(degree={self.degree}, coeffs={list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# Resultants and discriminants over the Laurent ring
# ---------------------------------------------------------------------------


def _ylist_degree(coeffs: YCoeffs) -> int:
    for k in range(len(coeffs) - 1, -1, -1):
        if not coeffs[k].is_zero():
            return k
    return -1


def _ylist_prem(A: YCoeffs, B: YCoeffs) -> YCoeffs:
    dA, dB = _ylist_degree(A), _ylist_degree(B)
    lb = B[dB]
    R = list(A[: dA + 1])
    e = dA - dB + 1
    while (dR := _ylist_degree(R)) >= dB:
        lr = R[dR]
        shift = dR - dB
        new = []
        for i in range(dR):
            term = R[i] * lb
            j = i - shift
            if 0 <= j < dB:
                term = term - lr * B[j]
            new.append(term)
        R = new[: _ylist_degree(new) + 1]
        e -= 1
    if e > 0:
        scale = lb**e
        R = [c * scale for c in R]
    return R


def resultant(A: YCoeffs, B: YCoeffs) -> LaurentPoly:
    """Resultant of two Y-polynomials with Laurent coefficients, computed by
    the subresultant polynomial remainder sequence (all divisions exact)."""
    dA, dB = _ylist_degree(A), _ylist_degree(B)
    if dA < 0 or dB < 0:
        raise ValueError("resultant of the zero polynomial")
    arity = A[0].arity if A else B[0].arity
    if dA == 0 and dB == 0:
        return LaurentPoly.one(arity)
    sign = 1
    if dA < dB:
        A, B = B, A
        if dA % 2 and dB % 2:
            sign = -sign
        dA, dB = dB, dA
    A = list(A[: dA + 1])
    B = list(B[: dB + 1])
    g = LaurentPoly.one(arity)
    h = LaurentPoly.one(arity)
    while _ylist_degree(B) > 0:
        dA, dB = _ylist_degree(A), _ylist_degree(B)
        d = dA - dB
        if dA % 2 and dB % 2:
            sign = -sign
        R = _ylist_prem(A, B)
        A = B
        divisor = g * h**d
        B = [laurent_divexact(c, divisor) for c in R] if R else []
        g = A[_ylist_degree(A)]
        if d == 1:
            h = g
        elif d > 1:
            h = laurent_divexact(g**d, h ** (d - 1))
    if _ylist_degree(B) < 0:
        return LaurentPoly.zero(arity)
    dA = _ylist_degree(A)
    lead = B[0] ** dA
    h = laurent_divexact(lead, h ** (dA - 1)) if dA > 1 else lead
    return h if sign == 1 else -h


def discriminant(F: MonicYPoly) -> LaurentPoly:
    """(-1)^(d(d-1)/2) * Res_Y(F, dF/dY); zero exactly when F has a repeated
    root over the fraction field."""
    d = F.degree
    res = resultant(F.as_list(), F.y_derivative())
    return res if (d * (d - 1) // 2) % 2 == 0 else -res


def sylvester_resultant(A: YCoeffs, B: YCoeffs) -> LaurentPoly:
    """Independent cross-check: resultant as the Sylvester determinant,
    expanded by minors (exact, division-free)."""
    dA, dB = _ylist_degree(A), _ylist_degree(B)
    arity = A[0].arity
    n = dA + dB
    zero = LaurentPoly.zero(arity)
    rows = []
    for i in range(dB):
        row = [zero] * n
        for k in range(dA + 1):
            row[i + dA - k] = A[k]
        rows.append(row)
    for i in range(dA):
        row = [zero] * n
        for k in range(dB + 1):
            row[i + dB - k] = B[k]
        rows.append(row)
    return _det_minors(rows)


def _det_minors(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    arity = rows[0][0].arity
    total = LaurentPoly.zero(arity)
    for j, top in enumerate(rows[0]):
        if top.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = top * _det_minors(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


# ---------------------------------------------------------------------------
# Variable separation (the constructive peeling transform)
# ---------------------------------------------------------------------------


class SeparationResult:
    """F(Y) = u_j^s * P(u_j^t Y + shift) with P free of variable j.

    Exponents s, t are rationals; in the basis refined by ``factor`` (the
    denominator of t) both become integers.  ``reduced`` is P with variable j
    dropped; ``shift`` lives over the refined full basis.
    """

    __slots__ = ("variable", "s", "t", "shift", "reduced", "refined_basis", "factor")

    def __init__(self, variable, s, t, shift, reduced, refined_basis, factor):
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "reduced", reduced)
        object.__setattr__(self, "refined_basis", refined_basis)
        object.__setattr__(self, "factor", factor)

    def __setattr__(self, name, value):
        raise AttributeError("SeparationResult is immutable")

    def __repr__(self):
        return (
            f"SeparationResult(variable={self.variable}, s={self.s}, t={self.t}, "
            f"factor={self.factor})"
        )


def _ylist_compose_linear(coeffs: YCoeffs, const: LaurentPoly, lin: LaurentPoly) -> YCoeffs:
    """Substitute Y = lin * W + const into a Y-polynomial, by Horner."""
    arity = coeffs[0].arity
    result = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        shifted = [term * lin for term in result]
        new = [LaurentPoly.zero(arity)] + shifted
        for k in range(len(result)):
            new[k] = new[k] + result[k] * const
        new[0] = new[0] + c
        result = new
    return result


def _twist_bound(F: MonicYPoly, j: int) -> int:
    """Search bound for the twist exponent t: a valid t is confined by how far
    the j-exponents of each coefficient sit from zero, amortized over the
    co-degree."""
    d = F.degree
    bound = 0
    for m, coef in enumerate(F.coeffs):
        if coef.is_zero() or not coef.depends_on(j):
            continue
        k = d - m
        span = coef.exponent_span(j)
        amax = max(abs(coef.min_exponent(j)), abs(coef.max_exponent(j)))
        bound = max(bound, ceil(Fraction(span + amax, k)))
    return bound + 1


def separate_variable(
    F: MonicYPoly, basis: UnitBasis, j: int, delta: LaurentPoly | None = None
) -> SeparationResult:
    """Find rational s, t and a shift A with F(Y) = u_j^s P(u_j^t Y + A), P
    free of u_j.  Requires the discriminant to be a single monomial in u_j."""
    arity = F.arity
    d = F.degree
    if delta is None:
        delta = discriminant(F)
    if delta.is_zero() or not monomial_shape(delta, [j]).ok:
        raise SeparationError(
            f"discriminant is not a monomial in variable {j}", "precondition"
        )
    if not any(c.depends_on(j) for c in F.coeffs):
        reduced = MonicYPoly(arity - 1, [c.drop_variable(j) for c in F.coeffs])
        return SeparationResult(
            j, Fraction(0), Fraction(0), LaurentPoly.zero(arity), reduced, basis, 1
        )
    bound = _twist_bound(F, j)
    rejected = []
    for numerator in _alternating(bound * d):
        t = Fraction(numerator, d)
        k = t.denominator
        tp = int(t * k)
        sp = -tp * d
        Fk = F.map_coefficients(lambda c: c.rescale_exponents(j, k))
        shift_vec = [0] * arity
        shift_vec[j] = tp
        twisted_sub = Fk.coeffs[d - 1].shift(shift_vec)
        shift_terms = {
            e: c / RatFunc(d) for e, c in twisted_sub.terms.items() if e[j] != 0
        }
        shift = LaurentPoly(arity, shift_terms)
        inv_vec = [0] * arity
        inv_vec[j] = -tp
        lin = LaurentPoly.monomial(arity, inv_vec)
        composed = _ylist_compose_linear(Fk.as_list(), lin * (-shift), lin)
        scale_vec = [0] * arity
        scale_vec[j] = -sp
        P = [c.shift(scale_vec) for c in composed]
        if not P[-1].is_one() or any(c.depends_on(j) for c in P):
            rejected.append(t)
            continue
        refined = basis.refine(j, k)
        restore_vec = [0] * arity
        restore_vec[j] = tp
        relin = LaurentPoly.monomial(arity, restore_vec)
        recomposed = _ylist_compose_linear(P, shift, relin)
        unscale = [0] * arity
        unscale[j] = sp
        recomposed = [c.shift(unscale) for c in recomposed]
        if recomposed != Fk.as_list():
            raise RecompositionError(
                f"separation at variable {j} with t={t} did not recompose"
            )
        reduced = MonicYPoly(arity - 1, [c.drop_variable(j) for c in P[:-1]])
        s = Fraction(-numerator)
        return SeparationResult(j, s, t, shift, reduced, refined, k)
    raise SeparationError(
        f"no valid twist exponent for variable {j} within bound {bound}",
        "no_valid_t",
        tuple(rejected),
    )


def _alternating(limit: int):
    yield 0
    for m in range(1, limit + 1):
        yield m
        yield -m


# ---------------------------------------------------------------------------
# Rational-function roots (the recursion base over K)
# ---------------------------------------------------------------------------


def ratfunc_roots(F: MonicYPoly) -> list[RatFunc]:
    """All roots of F lying in Q(i)(z), for F with arity-0 coefficients.

    Clears denominators so roots of the transformed monic polynomial are
    z-polynomials, recovers their values at integer sample points, interpolates
    candidates, and confirms by exact substitution.
    """
    if F.arity != 0:
        raise ValueError("ratfunc_roots requires arity-0 coefficients")
    d = F.degree
    coeffs = [c.as_ratfunc() for c in F.coeffs]
    denom = ZPoly.one()
    for c in coeffs:
        denom = poly_lcm(denom, c.den)
    cleared: list[ZPoly] = []
    for m, c in enumerate(coeffs):
        power = d - m
        value = c * RatFunc(denom) ** power
        if not value.is_polynomial():
            raise RecompositionError("denominator clearing failed")
        cleared.append(value.num)
    degree_bound = 0
    for m, g in enumerate(cleared):
        if not g.is_zero():
            degree_bound = max(degree_bound, ceil(Fraction(g.degree, d - m)))
    sample_count = d * degree_bound + 1
    points = [_integer_point(i) for i in range(sample_count)]
    root_sets = []
    for z0 in points:
        specialized = _specialize(cleared, d, z0)
        roots = _gaussian_rational_roots(specialized)
        if not roots:
            return []
        root_sets.append(roots)
    head = root_sets[: degree_bound + 1]
    tail = list(zip(points[degree_bound + 1 :], root_sets[degree_bound + 1 :]))
    candidates: list[ZPoly] = []
    seen = set()
    import itertools

    for combo in itertools.product(*head):
        w = interpolate(list(zip(points[: degree_bound + 1], combo)))
        key = w.coeffs
        if key in seen:
            continue
        seen.add(key)
        if all(any(w.eval_scalar(z0) == r for r in roots) for z0, roots in tail):
            candidates.append(w)
    confirmed = []
    for w in candidates:
        y = RatFunc(w, denom)
        acc = RatFunc.one()
        for c in reversed(coeffs):
            acc = acc * y + c
        if acc.is_zero():
            confirmed.append(y)
    confirmed.sort(key=lambda r: r.sort_key())
    return confirmed


def _integer_point(i: int) -> GaussianRational:
    magnitude = (i + 1) // 2
    return GaussianRational(magnitude if i % 2 == 1 else -magnitude)


def _specialize(cleared: list[ZPoly], d: int, z0: GaussianRational) -> ZPoly:
    coeffs = [g.eval_scalar(z0) for g in cleared] + [GaussianRational(1)]
    return ZPoly(coeffs)


def _gaussian_rational_roots(p: ZPoly) -> list[GaussianRational]:
    """Roots in Q(i) of a monic polynomial over Q(i), via the Gaussian-integer
    transform: scale the variable so every root must be a Gaussian integer,
    locate roots at high precision, round, and verify exactly."""
    clear = 1
    for c in p.coeffs:
        clear = _lcm(clear, _lcm(c.re.denominator, c.im.denominator))
    d = p.degree
    scaled = ZPoly(
        [c * GaussianRational(clear) ** (d - k) for k, c in enumerate(p.coeffs)]
    )
    squarefree = scaled // poly_gcd(scaled, scaled.derivative())
    roots = _gaussian_integer_roots(squarefree.monic())
    out = [GaussianRational(Fraction(v.re, clear), Fraction(v.im, clear)) for v in roots]
    return [r for r in out if p.eval_scalar(r).is_zero()]


def _gaussian_integer_roots(p: ZPoly) -> list[GaussianRational]:
    if p.degree <= 0:
        return []
    size = max(
        max(abs(c.re.numerator), abs(c.im.numerator), 1) for c in p.coeffs
    )
    digits = len(str(size))
    with mpmath.workdps(40 + 2 * digits):
        mp_coeffs = [
            mpmath.mpc(str(c.re), str(c.im)) for c in reversed(p.coeffs)
        ]
        approx = mpmath.polyroots(mp_coeffs, maxsteps=200, extraprec=80)
    found = []
    for r in approx:
        cand = GaussianRational(
            int(mpmath.nint(r.real)), int(mpmath.nint(r.imag))
        )
        if abs(r.real - int(cand.re)) > 0.25 or abs(r.imag - int(cand.im)) > 0.25:
            continue
        if p.eval_scalar(cand).is_zero() and cand not in found:
            found.append(cand)
    return found


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# Recursive root extraction
# ---------------------------------------------------------------------------


def extract_roots(
    F: MonicYPoly, basis: UnitBasis
) -> tuple[list[LaurentPoly], UnitBasis]:
    """Every root of F expressible in the Laurent ring over a refinement of
    the basis.  Peels one variable at a time where the discriminant is a
    monomial in it, recurses, and verifies each mapped-back root exactly."""
    basis.require_independent()
    if basis.arity != F.arity:
        raise ValueError("basis arity does not match the polynomial")
    delta = discriminant(F)
    if delta.is_zero():
        raise HypothesisFailure("discriminant vanishes: repeated factor in Y")
    if not is_squarefree(delta):
        raise HypothesisFailure("discriminant is not square-free")
    if F.degree == 1:
        root = -F.coeffs[0]
        _verify_root(F, root)
        return [root], basis
    if F.arity == 0:
        roots = [
            LaurentPoly.constant(0, r) for r in ratfunc_roots(F)
        ]
        for r in roots:
            _verify_root(F, r)
        return roots, basis
    witnesses = {}
    for j in range(F.arity):
        shape = monomial_shape(delta, [j])
        if not shape.ok:
            witnesses[j] = shape.witness
            continue
        try:
            sep = separate_variable(F, basis, j, delta=delta)
        except SeparationError as err:
            witnesses[j] = err
            continue
        return _lift_roots(F, sep)
    raise NoPeelableVariable(
        "no variable has single-monomial discriminant shape", witnesses
    )


def _lift_roots(F: MonicYPoly, sep: SeparationResult) -> tuple[list[LaurentPoly], UnitBasis]:
    j = sep.variable
    sub_basis = sep.refined_basis.drop(j)
    sub_roots, final_sub_basis = extract_roots(sep.reduced, sub_basis)
    factors = _refinement_factors(sub_basis, final_sub_basis)
    final_freqs = list(final_sub_basis.frequencies)
    final_freqs.insert(j, sep.refined_basis.frequencies[j])
    final_basis = UnitBasis(final_freqs)
    tp = int(sep.t * sep.factor)

    def embed_full(poly: LaurentPoly, scale_j: int) -> LaurentPoly:
        out = poly.rescale_exponents(j, scale_j)
        for i, factor in enumerate(factors):
            if factor != 1:
                pos = i if i < j else i + 1
                out = out.rescale_exponents(pos, factor)
        return out

    shift_emb = embed_full(sep.shift, 1)
    twist_vec = [0] * F.arity
    twist_vec[j] = -tp
    untwist = LaurentPoly.monomial(F.arity, twist_vec)
    F_final = F.map_coefficients(lambda c: embed_full(c, sep.factor))
    roots = []
    for w in sub_roots:
        g = untwist * (w.insert_variable(j) - shift_emb)
        _verify_root(F_final, g)
        roots.append(g)
    roots.sort(key=_canonical_key)
    return roots, final_basis


def _refinement_factors(before: UnitBasis, after: UnitBasis) -> list[int]:
    factors = []
    for old, new in zip(before.frequencies, after.frequencies):
        ratio = old.leading() / new.leading()
        if not ratio.is_rational() or ratio.re.denominator != 1 or ratio.re <= 0:
            raise RecompositionError("recursive refinement produced a bad factor")
        factor = int(ratio.re)
        if new.scale(Fraction(factor)) != old:
            raise RecompositionError("refined frequency is not an integer division")
        factors.append(factor)
    return factors


def _verify_root(F: MonicYPoly, root: LaurentPoly) -> None:
    if not F.evaluate(root).is_zero():
        raise RecompositionError("extracted root failed exact substitution")


def _canonical_key(poly: LaurentPoly):
    return tuple(
        (e, c.sort_key()) for e, c in poly.sorted_terms()
    )
