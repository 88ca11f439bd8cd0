"""Exact arithmetic in the Laurent ring K[x_1^±1, ..., x_n^±1], K = Q(i)(z).

Terms are a finite map from integer exponent vectors to nonzero RatFunc
coefficients.  Monomials are units of the ring, so GCDs, square-free parts and
radicals are always taken after splitting off the monomial content.  The
multivariate GCD runs a recursive subresultant remainder sequence with content
extraction; normalized results carry no monomial factor and have leading
coefficient 1 under the graded-lexicographic term order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DivisionError, MonomialInputError
from .ratfunc import RatFunc
from .scalars import GaussianRational
from .units import UnitBasis
from .zpoly import ZPoly

Exponents = tuple[int, ...]
Terms = dict[Exponents, RatFunc]


def _grlex(e: Exponents):
    return (sum(e), e)


class LaurentPoly:
    """Immutable Laurent polynomial of fixed arity."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Exponents, RatFunc] | None = None):
        clean: Terms = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != arity:
                raise ValueError(f"exponent vector {exps} does not match arity {arity}")
            coef = coef if isinstance(coef, RatFunc) else RatFunc(coef)
            if not coef.is_zero():
                clean[exps] = coef
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- construction ---------------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "LaurentPoly":
        return LaurentPoly(arity)

    @staticmethod
    def one(arity: int) -> "LaurentPoly":
        return LaurentPoly(arity, {(0,) * arity: RatFunc.one()})

    @staticmethod
    def constant(arity: int, value) -> "LaurentPoly":
        value = value if isinstance(value, RatFunc) else RatFunc(value)
        return LaurentPoly(arity, {(0,) * arity: value})

    @staticmethod
    def monomial(arity: int, exps: Sequence[int], coef=1) -> "LaurentPoly":
        return LaurentPoly(arity, {tuple(exps): RatFunc(coef) if not isinstance(coef, RatFunc) else coef})

    @staticmethod
    def variable(arity: int, index: int) -> "LaurentPoly":
        exps = [0] * arity
        exps[index] = 1
        return LaurentPoly.monomial(arity, exps)

    # -- queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self == LaurentPoly.one(self.arity)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        """True when the value lies in K (a single term with zero exponents)."""
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def as_ratfunc(self) -> RatFunc:
        if self.is_zero():
            return RatFunc.zero()
        if not self.is_constant():
            raise ValueError("Laurent polynomial is not a constant of K")
        return next(iter(self.terms.values()))

    def leading_term(self) -> tuple[Exponents, RatFunc]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex)
        return exps, self.terms[exps]

    def sorted_terms(self) -> list[tuple[Exponents, RatFunc]]:
        return sorted(self.terms.items(), key=lambda item: _grlex(item[0]))

    def min_exponent(self, index: int) -> int:
        if not self.terms:
            raise ValueError("zero polynomial")
        return min(e[index] for e in self.terms)

    def max_exponent(self, index: int) -> int:
        if not self.terms:
            raise ValueError("zero polynomial")
        return max(e[index] for e in self.terms)

    def exponent_span(self, index: int) -> int:
        return self.max_exponent(index) - self.min_exponent(index) if self.terms else 0

    def depends_on(self, index: int) -> bool:
        return any(e[index] for e in self.terms)

    def exponents_of(self, index: int) -> set[int]:
        return {e[index] for e in self.terms}

    # -- ring operations -----------------------------------------------------------

    def _require_same_arity(self, other: "LaurentPoly") -> None:
        if self.arity != other.arity:
            raise ValueError("arity mismatch")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for exps, coef in other.terms.items():
            acc = out.get(exps)
            out[exps] = coef if acc is None else acc + coef
        return LaurentPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out: Terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = out.get(exps)
                out[exps] = prod if acc is None else acc + prod
        return LaurentPoly(self.arity, out)

    __rmul__ = __mul__

    def scale(self, coef) -> "LaurentPoly":
        coef = coef if isinstance(coef, RatFunc) else RatFunc(coef)
        return LaurentPoly(self.arity, {e: c * coef for e, c in self.terms.items()})

    def shift(self, offsets: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        return LaurentPoly(
            self.arity,
            {tuple(a + b for a, b in zip(e, offsets)): c for e, c in self.terms.items()},
        )

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise DivisionError(
                    "negative power of a non-monomial Laurent polynomial", self
                )
            exps, coef = next(iter(self.terms.items()))
            return LaurentPoly(
                self.arity, {tuple(x * k for x in exps): coef**k}
            )
        result = LaurentPoly.one(self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        return self**-1

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._require_same_arity(other)
            return other
        if isinstance(other, (int, Fraction, GaussianRational, ZPoly, RatFunc)):
            return LaurentPoly.constant(self.arity, RatFunc(other) if not isinstance(other, RatFunc) else other)
        raise TypeError(f"cannot coerce {type(other).__name__} to LaurentPoly")

    # -- structure -----------------------------------------------------------------

    def monomial_split(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Split f = unit * core with unit a single term and core normalized:
        min exponent 0 in every variable, graded-lex leading coefficient 1."""
        if self.is_zero():
            raise ValueError("zero polynomial has no monomial split")
        mins = tuple(self.min_exponent(j) for j in range(self.arity))
        shifted = self.shift(tuple(-m for m in mins))
        _, lead = shifted.leading_term()
        core = shifted.scale(lead.inverse())
        unit = LaurentPoly.monomial(self.arity, mins, lead)
        return unit, core

    def normalized(self) -> "LaurentPoly":
        """Monomial-content-free associate with leading coefficient 1."""
        return self.monomial_split()[1]

    def drop_variable(self, index: int) -> "LaurentPoly":
        if self.depends_on(index):
            raise ValueError("polynomial depends on the dropped variable")
        out = {e[:index] + e[index + 1 :]: c for e, c in self.terms.items()}
        return LaurentPoly(self.arity - 1, out)

    def insert_variable(self, index: int) -> "LaurentPoly":
        out = {e[:index] + (0,) + e[index:]: c for e, c in self.terms.items()}
        return LaurentPoly(self.arity + 1, out)

    def rescale_exponents(self, index: int, factor: int) -> "LaurentPoly":
        """Exponent map for a basis refinement Q_index -> Q_index / factor."""
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[index] *= factor
            out[tuple(e)] = c
        return LaurentPoly(self.arity, out)

    # -- calculus ---------------------------------------------------------------------

    def partial(self, index: int) -> "LaurentPoly":
        """Formal partial derivative with respect to variable ``index``."""
        out: Terms = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            shifted = list(e)
            shifted[index] = k - 1
            exps = tuple(shifted)
            add = c * RatFunc(k)
            acc = out.get(exps)
            out[exps] = add if acc is None else acc + add
        return LaurentPoly(self.arity, out)

    def dz(self) -> "LaurentPoly":
        """Coefficient-wise d/dz."""
        return LaurentPoly(self.arity, {e: c.derivative() for e, c in self.terms.items()})

    def derive(self, basis: UnitBasis) -> "LaurentPoly":
        """Image under the derivation compatible with d/dz on substituted units.

        Termwise: a * x^e  ->  (a' + a * sum_j e_j Q_j'(z)) * x^e.
        """
        if basis.arity != self.arity:
            raise ValueError("basis arity mismatch")
        logs = [RatFunc(q.derivative()) for q in basis.frequencies]
        out: Terms = {}
        for e, c in self.terms.items():
            coef = c.derivative()
            for j, k in enumerate(e):
                if k:
                    coef = coef + c * logs[j] * RatFunc(k)
            if not coef.is_zero():
                out[e] = coef
        return LaurentPoly(self.arity, out)

    # -- evaluation over K ---------------------------------------------------------------

    def substitute_units(self, values: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Substitute a monomial value for each variable (used by recomposition
        checks); every value must be a monomial so negative exponents resolve."""
        result = LaurentPoly.zero(values[0].arity if values else 0)
        for e, c in self.terms.items():
            term = LaurentPoly.constant(result.arity, c)
            for j, k in enumerate(e):
                term = term * values[j] ** k
            result = result + term
        return result

    # -- identity -----------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational, ZPoly, RatFunc)):
            other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"LaurentPoly(arity={self.arity}, 0)"
        body = " + ".join(f"({c!r})*x^{e}" for e, c in self.sorted_terms())
        return f"LaurentPoly(arity={self.arity}, {body})"


# ---------------------------------------------------------------------------
# Exact division
# ---------------------------------------------------------------------------


def laurent_divexact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact quotient f / g in the Laurent ring; raises DivisionError with the
    remainder witness when g does not divide f."""
    f._require_same_arity(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.arity)
    g_mins = tuple(g.min_exponent(j) for j in range(g.arity))
    f_mins = tuple(f.min_exponent(j) for j in range(f.arity))
    g0 = g.shift(tuple(-m for m in g_mins))
    f0 = f.shift(tuple(-m for m in f_mins))
    quot = _poly_divexact(f0, g0)
    if quot is None:
        raise DivisionError("not divisible in the Laurent ring", _poly_divrem_witness(f0, g0))
    return quot.shift(tuple(a - b for a, b in zip(f_mins, g_mins)))


def _poly_divexact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly | None:
    """Exact division of polynomial parts (all exponents nonnegative)."""
    lt_exps, lt_coef = g.leading_term()
    rem = f
    out: Terms = {}
    while not rem.is_zero():
        r_exps, r_coef = rem.leading_term()
        diff = tuple(a - b for a, b in zip(r_exps, lt_exps))
        if any(d < 0 for d in diff):
            return None
        c = r_coef / lt_coef
        out[diff] = c
        rem = rem - LaurentPoly.monomial(f.arity, diff, c) * g
    return LaurentPoly(f.arity, out)


def _poly_divrem_witness(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Multivariate division remainder, returned as the non-divisibility witness."""
    lt_exps, lt_coef = g.leading_term()
    rem = f
    tail = LaurentPoly.zero(f.arity)
    while not rem.is_zero():
        r_exps, r_coef = rem.leading_term()
        diff = tuple(a - b for a, b in zip(r_exps, lt_exps))
        if any(d < 0 for d in diff):
            move = LaurentPoly.monomial(f.arity, r_exps, r_coef)
            tail = tail + move
            rem = rem - move
            continue
        rem = rem - LaurentPoly.monomial(f.arity, diff, r_coef / lt_coef) * g
    return tail


# ---------------------------------------------------------------------------
# Multivariate GCD (recursive subresultant PRS with content extraction)
# ---------------------------------------------------------------------------


def laurent_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """GCD in the polynomial ring after clearing monomial content, normalized
    to have no monomial factor and graded-lex leading coefficient 1.  Coprime
    inputs give 1."""
    f._require_same_arity(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    result = _gcd_core(f.normalized(), g.normalized())
    return result.normalized()


def _gcd_core(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_constant() or g.is_constant():
        return LaurentPoly.one(f.arity)
    main = _pick_main_variable(f, g)
    if main is None:
        return LaurentPoly.one(f.arity)
    fc, fp = _content_primitive(f, main)
    gc, gp = _content_primitive(g, main)
    cont = _gcd_core(fc, gc)
    prim = _prs_gcd(fp, gp, main)
    return cont * prim


def _pick_main_variable(f: LaurentPoly, g: LaurentPoly) -> int | None:
    """Variable both sides are measured in: smallest combined degree, ties by
    index.  None when the polynomials share no variable to recurse on."""
    best = None
    for j in range(f.arity):
        dj = max(
            f.max_exponent(j) if f.depends_on(j) else 0,
            g.max_exponent(j) if g.depends_on(j) else 0,
        )
        if dj > 0 and (best is None or dj < best[0]):
            best = (dj, j)
    return None if best is None else best[1]


def _univariate(f: LaurentPoly, var: int) -> list[LaurentPoly]:
    """Coefficients of f as a polynomial in ``var`` (exponent there zeroed)."""
    deg = f.max_exponent(var) if f.terms else 0
    coeffs: list[Terms] = [dict() for _ in range(deg + 1)]
    for e, c in f.terms.items():
        k = e[var]
        reduced = list(e)
        reduced[var] = 0
        coeffs[k][tuple(reduced)] = c
    return [LaurentPoly(f.arity, t) for t in coeffs]


def _from_univariate(coeffs: Sequence[LaurentPoly], var: int, arity: int) -> LaurentPoly:
    out: Terms = {}
    for k, part in enumerate(coeffs):
        for e, c in part.terms.items():
            e = list(e)
            e[var] = k
            out[tuple(e)] = c
    return LaurentPoly(arity, out)


def _uni_degree(coeffs: Sequence[LaurentPoly]) -> int:
    for k in range(len(coeffs) - 1, -1, -1):
        if not coeffs[k].is_zero():
            return k
    return -1


def _uni_trim(coeffs: list[LaurentPoly]) -> list[LaurentPoly]:
    d = _uni_degree(coeffs)
    return coeffs[: d + 1]


def _content_primitive(f: LaurentPoly, var: int) -> tuple[LaurentPoly, LaurentPoly]:
    coeffs = [c for c in _univariate(f, var) if not c.is_zero()]
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant():
            break
        cont = _gcd_core(cont, c)
    cont = cont.normalized() if not cont.is_constant() else LaurentPoly.one(f.arity)
    prim = f if cont.is_one() else _must_divide(f, cont)
    return cont, prim


def _must_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    q = _poly_divexact(f, g)
    if q is None:
        raise DivisionError("internal GCD division was not exact", f)
    return q


def _uni_prem(A: list[LaurentPoly], B: list[LaurentPoly], arity: int) -> list[LaurentPoly]:
    """Pseudo-remainder prem(A, B) = lc(B)^(dA-dB+1) * A  mod  B."""
    dA, dB = _uni_degree(A), _uni_degree(B)
    lb = B[dB]
    R = list(A[: dA + 1])
    e = dA - dB + 1
    while (dR := _uni_degree(R)) >= dB and dR >= 0:
        lr = R[dR]
        shift = dR - dB
        newR = []
        for i in range(dR):
            term = R[i] * lb
            j = i - shift
            if 0 <= j < dB:
                term = term - lr * B[j]
            newR.append(term)
        R = _uni_trim(newR)
        e -= 1
    if e > 0:
        scale = lb**e
        R = [c * scale for c in R]
    return R


def _prs_gcd(A_poly: LaurentPoly, B_poly: LaurentPoly, var: int) -> LaurentPoly:
    """GCD of primitive polynomials in ``var`` by the subresultant PRS."""
    arity = A_poly.arity
    A = _uni_trim(_univariate(A_poly, var))
    B = _uni_trim(_univariate(B_poly, var))
    if _uni_degree(A) < _uni_degree(B):
        A, B = B, A
    if _uni_degree(B) == 0:
        return LaurentPoly.one(arity)
    g = LaurentPoly.one(arity)
    h = LaurentPoly.one(arity)
    while True:
        d = _uni_degree(A) - _uni_degree(B)
        R = _uni_prem(A, B, arity)
        if _uni_degree(R) < 0:
            prim = _content_primitive(_from_univariate(B, var, arity), var)[1]
            return prim
        if _uni_degree(R) == 0:
            return LaurentPoly.one(arity)
        divisor = g * h**d
        A = B
        B = [_must_divide(c, divisor) for c in R]
        g = A[_uni_degree(A)]
        if d > 0:
            h = _must_divide(g**d, h ** (d - 1)) if d > 1 else g
        # d == 0 keeps h unchanged


# ---------------------------------------------------------------------------
# Square-free structure
# ---------------------------------------------------------------------------


def _derivation_images(f: LaurentPoly) -> list[LaurentPoly]:
    images = [f.partial(j) for j in range(f.arity)]
    images.append(f.dz())
    return [im for im in images if not im.is_zero()]


def _repeated_part(core: LaurentPoly) -> LaurentPoly:
    """gcd(core, all derivation images) = product of S_k^(k-1), normalized."""
    g = core
    for im in _derivation_images(core):
        if g.is_constant():
            break
        g = _gcd_core(g.normalized(), im.normalized())
    return g.normalized() if not g.is_constant() else LaurentPoly.one(core.arity)


def is_squarefree(f: LaurentPoly) -> bool:
    """No repeated non-unit factor (monomials are units of the Laurent ring)."""
    if f.is_zero():
        raise ValueError("square-freeness of zero is undefined")
    if f.is_monomial():
        return True
    core = f.normalized()
    return _repeated_part(core).is_one()


def squarefree_decompose(f: LaurentPoly) -> list[tuple[LaurentPoly, int]]:
    """Multiplicity-grouped factors: f = unit * prod S_k^k with each S_k
    square-free, monomial-free, pairwise coprime.  Sorted by multiplicity."""
    if f.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    if f.is_monomial():
        return []
    core = f.normalized()
    return sorted(_sqf(core), key=lambda item: item[1])


def _sqf(core: LaurentPoly) -> list[tuple[LaurentPoly, int]]:
    if core.is_constant():
        return []
    rep = _repeated_part(core)
    if rep.is_one():
        return [(core, 1)]
    radical = _must_divide(core, rep).normalized()
    inner = _sqf(rep)
    higher = LaurentPoly.one(core.arity)
    for part, _ in inner:
        higher = higher * part
    s1 = _must_divide(radical, higher.normalized() if not higher.is_constant() else higher)
    s1 = s1.normalized() if not s1.is_zero() and not s1.is_constant() else None
    out = [(part, mult + 1) for part, mult in inner]
    if s1 is not None:
        out.append((s1, 1))
    return out


def radical(f: LaurentPoly) -> LaurentPoly:
    """Product of the distinct non-unit factors, normalized."""
    parts = squarefree_decompose(f)
    if not parts:
        raise MonomialInputError("radical of a monomial is undefined")
    out = LaurentPoly.one(f.arity)
    for part, _ in parts:
        out = out * part
    return out.normalized()


# ---------------------------------------------------------------------------
# Critical pair (radical, multiplicity-weighted derived cofactor sum)
# ---------------------------------------------------------------------------


def critical_pair(
    f: LaurentPoly, basis: UnitBasis
) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """Return (fbar, fhat, gcd(fbar, fhat)) where fbar is the radical and
    fhat = sum_k k * derive(S_k) * prod_{j != k} S_j over the square-free
    blocks.  Monomial content is ignored; a bare monomial is rejected."""
    if f.is_zero() or f.is_constant():
        raise ValueError("critical pair requires a nonconstant polynomial")
    if f.is_monomial():
        raise MonomialInputError("critical pair of a monomial is undefined")
    basis.require_independent()
    blocks = squarefree_decompose(f)
    fbar = LaurentPoly.one(f.arity)
    for part, _ in blocks:
        fbar = fbar * part
    fhat = LaurentPoly.zero(f.arity)
    for i, (part, mult) in enumerate(blocks):
        piece = part.derive(basis).scale(RatFunc(mult))
        for j, (other, _) in enumerate(blocks):
            if j != i:
                piece = piece * other
        fhat = fhat + piece
    return fbar, fhat, laurent_gcd(fbar, fhat)


# ---------------------------------------------------------------------------
# Monomial shape of a discriminant with respect to a variable block
# ---------------------------------------------------------------------------


class ShapeResult:
    """Outcome of the single-monomial-dependence test on a variable block."""

    __slots__ = ("ok", "cofactor", "exponents", "witness")

    def __init__(self, ok, cofactor=None, exponents=None, witness=None):
        object.__setattr__(self, "ok", ok)
        object.__setattr__(self, "cofactor", cofactor)
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "witness", witness)

    def __setattr__(self, name, value):
        raise AttributeError("ShapeResult is immutable")

    def __bool__(self) -> bool:
        return self.ok


def monomial_shape(delta: LaurentPoly, block: Iterable[int]) -> ShapeResult:
    """Check that every variable in ``block`` occurs in ``delta`` only through
    a single monomial factor; on success return the block-free cofactor and
    the exponent of each block variable, on failure a witness
    (variable, two distinct exponents)."""
    if delta.is_zero():
        raise ValueError("shape check requires a nonzero polynomial")
    exponents = {}
    for j in block:
        seen = delta.exponents_of(j)
        if len(seen) > 1:
            pair = sorted(seen)[:2]
            return ShapeResult(False, witness=(j, (pair[0], pair[1])))
        exponents[j] = next(iter(seen))
    out: Terms = {}
    for e, c in delta.terms.items():
        e = list(e)
        for j in exponents:
            e[j] = 0
        out[tuple(e)] = c
    return ShapeResult(True, LaurentPoly(delta.arity, out), exponents)
