"""The textual expression language.

Grammar (whitespace insignificant)::

    expr    := ("+"|"-")? term (("+"|"-") term)*
    term    := factor (("*"|"/") factor)*
    factor  := base ("^" ("-")? integer)?
    base    := "exp" "[" expr "]" | "z" | "Y" | integer | integer? "i" | "(" expr ")"

Powers take integer exponents only.  The argument of exp[...] must lower to a
polynomial in z with Gaussian-rational coefficients and zero constant term.
Y-polynomials use the same grammar with the extra variable Y and must be monic
in Y.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import LoweringError, ParseError
from .laurent import LaurentPoly
from .ratfunc import RatFunc
from .scalars import GaussianRational, render_literal
from .units import UnitBasis, sorted_frequencies
from .ypoly import MonicYPoly
from .zpoly import ZPoly

# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------

_KEYWORDS = {"exp", "z", "Y"}
_SYMBOLS = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "^": "CARET",
    "(": "LPAREN",
    ")": "RPAREN",
    "[": "LBRACK",
    "]": "RBRACK",
}


class Token:
    __slots__ = ("kind", "value", "start", "end")

    def __init__(self, kind, value, start, end):
        self.kind = kind
        self.value = value
        self.start = start
        self.end = end

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, {self.start}:{self.end})"


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[ch], ch, i, i + 1))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "i":
                tokens.append(Token("IMAG", int(text[i:j]), i, j + 1))
                i = j + 1
            else:
                tokens.append(Token("INT", int(text[i:j]), i, j))
                i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            word = text[i:j]
            if word == "i":
                tokens.append(Token("IMAG", 1, i, j))
            elif word in _KEYWORDS:
                tokens.append(Token(word.upper(), word, i, j))
            elif word[0] == "x" and word[1:].isdigit():
                tokens.append(Token("XVAR", int(word[1:]), i, j))
            else:
                raise ParseError(f"unknown name {word!r}", i, ("exp", "z", "Y", "i"))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("EOF", None, n, n))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


class ExprAst:
    """Node kinds: sum, product, power, exp, z, Y, int, imag.

    ``value`` holds the sign/operator lists for sum and product nodes, the
    integer exponent for power nodes and the literal value for int/imag.
    """

    __slots__ = ("kind", "children", "value", "span")

    def __init__(self, kind, children=(), value=None, span=(0, 0)):
        self.kind = kind
        self.children = tuple(children)
        self.value = value
        self.span = span

    def structure(self):
        """Span-independent shape used for structural equality."""
        return (
            self.kind,
            self.value if not isinstance(self.value, list) else tuple(self.value),
            tuple(child.structure() for child in self.children),
        )

    def __eq__(self, other):
        if not isinstance(other, ExprAst):
            return NotImplemented
        return self.structure() == other.structure()

    def __repr__(self):
        return f"ExprAst({self.kind}, value={self.value!r}, children={len(self.children)})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}", tok.start, (what,))
        return self.advance()

    def parse(self) -> ExprAst:
        if self.peek().kind == "EOF":
            raise ParseError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError("trailing input", tok.start)
        return node

    def expr(self) -> ExprAst:
        start = self.peek().start
        signs = []
        if self.peek().kind in ("PLUS", "MINUS"):
            signs.append(1 if self.advance().kind == "PLUS" else -1)
        else:
            signs.append(1)
        terms = [self.term()]
        while self.peek().kind in ("PLUS", "MINUS"):
            signs.append(1 if self.advance().kind == "PLUS" else -1)
            terms.append(self.term())
        if len(terms) == 1 and signs[0] == 1:
            return terms[0]
        return ExprAst("sum", terms, signs, (start, terms[-1].span[1]))

    def term(self) -> ExprAst:
        start = self.peek().start
        factors = [self.factor()]
        ops = []
        while self.peek().kind in ("STAR", "SLASH"):
            ops.append(self.advance().value)
            factors.append(self.factor())
        if not ops:
            return factors[0]
        return ExprAst("product", factors, ops, (start, factors[-1].span[1]))

    def factor(self) -> ExprAst:
        base = self.base()
        if self.peek().kind != "CARET":
            return base
        self.advance()
        negative = False
        if self.peek().kind == "MINUS":
            negative = True
            self.advance()
        tok = self.peek()
        if tok.kind != "INT":
            raise ParseError(
                "power exponent must be an integer literal", tok.start, ("integer",)
            )
        self.advance()
        exponent = -tok.value if negative else tok.value
        return ExprAst("power", [base], exponent, (base.span[0], tok.end))

    def base(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "EXP":
            self.advance()
            self.expect("LBRACK", "[")
            arg = self.expr()
            close = self.expect("RBRACK", "]")
            return ExprAst("exp", [arg], None, (tok.start, close.end))
        if tok.kind == "Z":
            self.advance()
            return ExprAst("z", (), None, (tok.start, tok.end))
        if tok.kind == "Y":
            self.advance()
            return ExprAst("Y", (), None, (tok.start, tok.end))
        if tok.kind == "INT":
            self.advance()
            return ExprAst("int", (), tok.value, (tok.start, tok.end))
        if tok.kind == "IMAG":
            self.advance()
            return ExprAst("imag", (), tok.value, (tok.start, tok.end))
        if tok.kind == "XVAR":
            self.advance()
            return ExprAst("xvar", (), tok.value, (tok.start, tok.end))
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.expr()
            close = self.expect("RPAREN", ")")
            return ExprAst(
                inner.kind, inner.children, inner.value, (tok.start, close.end)
            )
        raise ParseError(
            "expected a value", tok.start, ("exp", "z", "Y", "integer", "(", "i")
        )


def parse_expression(text: str) -> ExprAst:
    """Parse to an AST; malformed input raises ParseError with a position."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render(node: ExprAst) -> str:
    return _render(node, 0)


def _render(node: ExprAst, parent_level: int) -> str:
    # levels: 0 sum context, 1 product context, 2 power/base context
    if node.kind == "sum":
        parts = []
        for sign, child in zip(node.value, node.children):
            text = _render(child, 1)
            if not parts:
                parts.append(("-" if sign < 0 else "") + text)
            else:
                parts.append(("- " if sign < 0 else "+ ") + text)
        body = " ".join(parts)
        return f"({body})" if parent_level >= 1 else body
    if node.kind == "product":
        parts = [_render(node.children[0], 1)]
        for op, child in zip(node.value, node.children[1:]):
            parts.append(op)
            parts.append(_render(child, 2 if op == "/" else 1))
        body = "".join(parts)
        return f"({body})" if parent_level >= 2 else body
    if node.kind == "power":
        body = f"{_render(node.children[0], 3)}^{node.value}"
        return f"({body})" if parent_level >= 3 else body
    if node.kind == "exp":
        return f"exp[{_render(node.children[0], 0)}]"
    if node.kind == "z":
        return "z"
    if node.kind == "Y":
        return "Y"
    if node.kind == "int":
        return str(node.value)
    if node.kind == "imag":
        return "i" if node.value == 1 else f"{node.value}i"
    if node.kind == "xvar":
        return f"x{node.value}"
    raise ValueError(f"unknown node kind {node.kind}")


# ---------------------------------------------------------------------------
# Lowering
# ---------------------------------------------------------------------------


class _YValue:
    """Intermediate value: polynomial in Y with Laurent coefficients."""

    __slots__ = ("arity", "parts")

    def __init__(self, arity: int, parts: dict[int, LaurentPoly]):
        self.arity = arity
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}

    @staticmethod
    def const(arity, value: LaurentPoly) -> "_YValue":
        return _YValue(arity, {0: value})

    def add(self, other: "_YValue") -> "_YValue":
        parts = dict(self.parts)
        for k, v in other.parts.items():
            parts[k] = parts[k] + v if k in parts else v
        return _YValue(self.arity, parts)

    def neg(self) -> "_YValue":
        return _YValue(self.arity, {k: -v for k, v in self.parts.items()})

    def mul(self, other: "_YValue") -> "_YValue":
        parts: dict[int, LaurentPoly] = {}
        for k1, v1 in self.parts.items():
            for k2, v2 in other.parts.items():
                prod = v1 * v2
                key = k1 + k2
                parts[key] = parts[key] + prod if key in parts else prod
        return _YValue(self.arity, parts)

    def is_y_free(self) -> bool:
        return all(k == 0 for k in self.parts)

    def scalar_part(self) -> LaurentPoly:
        return self.parts.get(0, LaurentPoly.zero(self.arity))


def _lower_value(node: ExprAst, env) -> _YValue:
    arity = env["arity"]
    if node.kind == "sum":
        acc = None
        for sign, child in zip(node.value, node.children):
            val = _lower_value(child, env)
            if sign < 0:
                val = val.neg()
            acc = val if acc is None else acc.add(val)
        return acc
    if node.kind == "product":
        acc = _lower_value(node.children[0], env)
        for op, child in zip(node.value, node.children[1:]):
            val = _lower_value(child, env)
            if op == "*":
                acc = acc.mul(val)
            else:
                acc = acc.mul(_invert(val, node.span, child.span))
        return acc
    if node.kind == "power":
        base = _lower_value(node.children[0], env)
        k = node.value
        if k < 0:
            base = _invert(base, node.span, node.children[0].span)
            k = -k
        result = _YValue.const(arity, LaurentPoly.one(arity))
        for _ in range(k):
            result = result.mul(base)
        return result
    if node.kind == "exp":
        if env.get("x_mode"):
            raise LoweringError(
                "exponential units are not allowed in coordinate polynomials",
                node.span[0],
            )
        index, multiple = env["frequency_map"][id(node)]
        exps = [0] * arity
        exps[index] = multiple
        return _YValue.const(arity, LaurentPoly.monomial(arity, exps))
    if node.kind == "z":
        return _YValue.const(
            arity, LaurentPoly.constant(arity, RatFunc.variable())
        )
    if node.kind == "Y":
        if not env["allow_y"]:
            raise LoweringError("Y is not allowed here", node.span[0])
        return _YValue(arity, {1: LaurentPoly.one(arity)})
    if node.kind == "int":
        return _YValue.const(arity, LaurentPoly.constant(arity, node.value))
    if node.kind == "imag":
        return _YValue.const(
            arity,
            LaurentPoly.constant(arity, GaussianRational(0, node.value)),
        )
    if node.kind == "xvar":
        if not env.get("x_mode"):
            raise LoweringError(
                "projective coordinates are not allowed here", node.span[0]
            )
        exps = [0] * arity
        exps[node.value] = 1
        return _YValue.const(arity, LaurentPoly.monomial(arity, exps))
    raise ValueError(f"unknown node kind {node.kind}")


def _invert(value: _YValue, span, child_span) -> _YValue:
    if not value.is_y_free():
        raise LoweringError("division by a Y-dependent expression", child_span[0])
    poly = value.scalar_part()
    if poly.is_zero():
        raise LoweringError("division by zero", child_span[0])
    if poly.is_constant():
        return _YValue.const(poly.arity, LaurentPoly.constant(poly.arity, poly.as_ratfunc().inverse()))
    if poly.is_monomial():
        return _YValue.const(poly.arity, poly.inverse_monomial())
    raise LoweringError(
        "division by a non-monomial exponential expression", child_span[0]
    )


def _collect_exp_nodes(node: ExprAst, out: list[ExprAst]) -> None:
    if node.kind == "exp":
        out.append(node)
        # nested exp inside the argument is rejected during argument lowering
    for child in node.children:
        _collect_exp_nodes(child, out)


def _lower_zpoly(node: ExprAst) -> RatFunc:
    """Restricted evaluator for exp arguments: values in K, no Y, no exp."""
    if node.kind == "sum":
        acc = RatFunc.zero()
        for sign, child in zip(node.value, node.children):
            val = _lower_zpoly(child)
            acc = acc + (-val if sign < 0 else val)
        return acc
    if node.kind == "product":
        acc = _lower_zpoly(node.children[0])
        for op, child in zip(node.value, node.children[1:]):
            val = _lower_zpoly(child)
            acc = acc * val if op == "*" else acc / val
        return acc
    if node.kind == "power":
        return _lower_zpoly(node.children[0]) ** node.value
    if node.kind == "z":
        return RatFunc.variable()
    if node.kind == "int":
        return RatFunc.scalar(node.value)
    if node.kind == "imag":
        return RatFunc.scalar(GaussianRational(0, node.value))
    if node.kind == "exp":
        raise LoweringError("nested exp is outside the ring", node.span[0])
    if node.kind == "Y":
        raise LoweringError("exp argument cannot contain Y", node.span[0])
    raise LoweringError("exp argument is not a z-polynomial", node.span[0])


def _frequency_of(node: ExprAst) -> ZPoly:
    arg = node.children[0]
    value = _lower_zpoly(arg)
    if not value.is_polynomial():
        raise LoweringError("exp argument is not a z-polynomial", arg.span[0])
    poly = value.num
    if poly.is_zero():
        raise LoweringError("exp argument must be nonzero", arg.span[0])
    if not poly.constant_term().is_zero():
        raise LoweringError(
            "nonzero constant term in frequency polynomial", arg.span[0]
        )
    return poly


def _rational_ratio(a: ZPoly, b: ZPoly) -> Fraction | None:
    """a = ratio * b with ratio in Q, or None."""
    if a.degree != b.degree:
        return None
    ratio = None
    for k in range(len(b.coeffs)):
        ca, cb = a.coefficient(k), b.coefficient(k)
        if cb.is_zero():
            if not ca.is_zero():
                return None
            continue
        q = ca / cb
        if not q.is_rational():
            return None
        if ratio is None:
            ratio = q.re
        elif ratio != q.re:
            return None
    return ratio


def _build_basis(exp_nodes: list[ExprAst]):
    """Group frequencies into Q-proportionality classes and pick, per class,
    the generator for which every member is an integer multiple with overall
    content 1."""
    classes: list[dict] = []
    node_info = {}
    for node in exp_nodes:
        freq = _frequency_of(node)
        for cls in classes:
            ratio = _rational_ratio(freq, cls["base"])
            if ratio is not None:
                cls["members"].append((node, ratio))
                break
        else:
            classes.append({"base": freq, "members": [(node, Fraction(1))]})
    generators = []
    for cls in classes:
        ratios = [r for _, r in cls["members"]]
        num_gcd = 0
        den_lcm = 1
        for r in ratios:
            num_gcd = _gcd(num_gcd, abs(r.numerator))
            den_lcm = _lcm(den_lcm, r.denominator)
        content = Fraction(num_gcd, den_lcm)
        generator = cls["base"].scale(content)
        cls["generator"] = generator
        cls["multiples"] = {
            id(node): int(r / content) for node, r in cls["members"]
        }
        generators.append(generator)
    ordered = sorted_frequencies(generators)
    index_of = {id(g): ordered.index(g) for g in generators}
    for cls in classes:
        gi = index_of[id(cls["generator"])]
        for node, _ in cls["members"]:
            node_info[id(node)] = (gi, cls["multiples"][id(node)])
    return ordered, node_info


def _gcd(a, b):
    from math import gcd as _g

    return _g(a, b)


def _lcm(a, b):
    from math import gcd as _g

    return a // _g(a, b) * b


def _prune_basis(parts: dict[int, LaurentPoly], frequencies: list[ZPoly]):
    arity = len(frequencies)
    used = set()
    for poly in parts.values():
        for e in poly.terms:
            for j, k in enumerate(e):
                if k:
                    used.add(j)
    keep = sorted(used)
    if len(keep) == arity:
        return parts, frequencies
    new_polys = {}
    for ypow, poly in parts.items():
        terms = {}
        for e, c in poly.terms.items():
            terms[tuple(e[j] for j in keep)] = c
        new_polys[ypow] = LaurentPoly(len(keep), terms)
    return new_polys, [frequencies[j] for j in keep]


def _lower(ast: ExprAst, allow_y: bool):
    exp_nodes: list[ExprAst] = []
    _collect_exp_nodes(ast, exp_nodes)
    frequencies, frequency_map = _build_basis(exp_nodes)
    env = {
        "arity": len(frequencies),
        "frequency_map": frequency_map,
        "allow_y": allow_y,
    }
    value = _lower_value(ast, env)
    parts, kept = _prune_basis(value.parts, frequencies)
    return parts, UnitBasis(kept)


def lower_to_symbolic(ast: ExprAst) -> tuple[LaurentPoly, UnitBasis]:
    """Lower an expression AST to a Laurent polynomial over its minimal basis."""
    parts, basis = _lower(ast, allow_y=False)
    poly = parts.get(0, LaurentPoly.zero(basis.arity))
    return poly, basis


def lower_ypoly(ast: ExprAst) -> tuple[MonicYPoly, UnitBasis]:
    """Lower a Y-polynomial expression; must be monic in Y with degree >= 1."""
    parts, basis = _lower(ast, allow_y=True)
    if not parts:
        raise LoweringError("empty Y-polynomial", ast.span[0])
    degree = max(parts)
    if degree < 1:
        raise LoweringError("polynomial must involve Y", ast.span[0])
    lead = parts[degree]
    if not lead.is_one():
        raise LoweringError("polynomial must be monic in Y", ast.span[0])
    coeffs = [
        parts.get(k, LaurentPoly.zero(basis.arity)) for k in range(degree)
    ]
    return MonicYPoly(basis.arity, coeffs), basis


def parse_function(text: str) -> tuple[LaurentPoly, UnitBasis]:
    return lower_to_symbolic(parse_expression(text))


def parse_ypoly(text: str) -> tuple[MonicYPoly, UnitBasis]:
    return lower_ypoly(parse_expression(text))


def lower_functions(texts) -> tuple[list[LaurentPoly], UnitBasis]:
    """Lower several expressions over one shared minimal basis."""
    asts = [parse_expression(t) for t in texts]
    exp_nodes: list[ExprAst] = []
    for ast in asts:
        _collect_exp_nodes(ast, exp_nodes)
    frequencies, frequency_map = _build_basis(exp_nodes)
    env = {
        "arity": len(frequencies),
        "frequency_map": frequency_map,
        "allow_y": False,
    }
    values = [_lower_value(ast, env) for ast in asts]
    polys = [v.scalar_part() for v in values]
    used = set()
    for poly in polys:
        for e in poly.terms:
            for j, k in enumerate(e):
                if k:
                    used.add(j)
    keep = sorted(used)
    if len(keep) != len(frequencies):
        pruned = []
        for poly in polys:
            terms = {
                tuple(e[j] for j in keep): c for e, c in poly.terms.items()
            }
            pruned.append(LaurentPoly(len(keep), terms))
        polys = pruned
        frequencies = [frequencies[j] for j in keep]
    return polys, UnitBasis(frequencies)


def parse_xpoly(text: str, arity: int | None = None) -> LaurentPoly:
    """Polynomial in projective coordinates x0..xn over K (no units, no Y)."""
    ast = parse_expression(text)
    indices: list[int] = []

    def walk(node: ExprAst):
        if node.kind == "xvar":
            indices.append(node.value)
        for child in node.children:
            walk(child)

    walk(ast)
    needed = max(indices, default=-1) + 1
    if arity is None:
        arity = needed
    elif needed > arity:
        raise LoweringError(f"coordinate x{needed - 1} exceeds arity {arity}", ast.span[0])
    env = {"arity": arity, "frequency_map": {}, "allow_y": False, "x_mode": True}
    value = _lower_value(ast, env)
    return value.scalar_part()


# ---------------------------------------------------------------------------
# Rendering symbolic objects back to the expression language
# ---------------------------------------------------------------------------


def render_scalar(value: GaussianRational) -> str:
    return render_literal(value)


def render_zpoly(poly: ZPoly) -> str:
    if poly.is_zero():
        return "0"
    pieces = []
    for k in range(poly.degree, -1, -1):
        c = poly.coefficient(k)
        if c.is_zero():
            continue
        sign, mag = _scalar_sign(c)
        body = _scalar_times_power(mag, "z", k)
        pieces.append((sign, body))
    return _join_signed(pieces)


def _scalar_sign(c: GaussianRational) -> tuple[int, GaussianRational]:
    negative = c.re < 0 or (c.re == 0 and c.im < 0)
    return (-1, -c) if negative else (1, c)


def _scalar_times_power(c: GaussianRational, var: str, k: int) -> str:
    if k == 0:
        return render_literal(c)
    power = var if k == 1 else f"{var}^{k}"
    if c.is_one():
        return power
    return f"{render_literal(c)}*{power}"


def _join_signed(pieces: list[tuple[int, str]]) -> str:
    out = []
    for sign, body in pieces:
        if not out:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(out)


def render_ratfunc(value: RatFunc, product_context: bool = False) -> str:
    num = render_zpoly(value.num)
    if value.den.is_one():
        if product_context and _needs_parens(num):
            return f"({num})"
        return num
    den = render_zpoly(value.den)
    num_part = f"({num})" if _needs_parens(num) else num
    den_part = f"({den})" if _needs_parens_tight(den) else den
    return f"{num_part}/{den_part}"


def _needs_parens(text: str) -> bool:
    return " " in text or "+" in text[1:] or "- " in text


def _needs_parens_tight(text: str) -> bool:
    return _needs_parens(text) or "*" in text or "/" in text or "^" in text


def render_laurent(poly: LaurentPoly, basis: UnitBasis) -> str:
    if poly.is_zero():
        return "0"
    pieces = []
    for exps, coef in sorted(
        poly.terms.items(), key=lambda item: (-sum(item[0]), tuple(-x for x in item[0]))
    ):
        pieces.append(_render_term(exps, coef, basis))
    return _join_signed(pieces)


def _render_term(exps, coef: RatFunc, basis: UnitBasis, y_power: int = 0):
    sign = 1
    lead = coef.num.leading()
    if lead.re < 0 or (lead.re == 0 and lead.im < 0):
        sign = -1
        coef = -coef
    factors = []
    if y_power:
        factors.append("Y" if y_power == 1 else f"Y^{y_power}")
    for j, k in enumerate(exps):
        if k == 0:
            continue
        unit = f"exp[{render_zpoly(basis.frequencies[j])}]"
        factors.append(unit if k == 1 else f"{unit}^{k}")
    if not factors:
        return (sign, render_ratfunc(coef))
    if coef.is_one():
        return (sign, "*".join(factors))
    return (sign, "*".join([render_ratfunc(coef, product_context=True)] + factors))


def render_ypoly(F: MonicYPoly, basis: UnitBasis) -> str:
    d = F.degree
    pieces = [(1, "Y" if d == 1 else f"Y^{d}")]
    for k in range(d - 1, -1, -1):
        coef = F.coeffs[k]
        if coef.is_zero():
            continue
        for exps, c in sorted(
            coef.terms.items(), key=lambda item: (-sum(item[0]), tuple(-x for x in item[0]))
        ):
            pieces.append(_render_term(exps, c, basis, y_power=k))
    return _join_signed(pieces)
