"""Input language for polynomials in ``x1..xn, y`` and for weight literals.

Grammar::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' integer)?
    base     := rational | 'zeta(' integer ')' | var | '(' expr ')'
    rational := integer ('/' integer)?

A leading ``-`` on a term is also accepted, so printed coefficients such as
``-zeta(3)`` read back unchanged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .scalars import CycScalar, QuadReal, format_scalar
from .series import Weight
from .solver import YPoly

# A canonical polynomial: {(x-exponents..., y-degree): nonzero CycScalar}
Mono = tuple


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"(\d+)|(zeta|sqrt|x\d+|y)|([-+*/^()])")


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            if ch == "\n":
                line, line_start = line + 1, pos + 1
            pos += 1
            continue
        col = pos - line_start + 1
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        if m.group(1):
            out.append(Token("int", m.group(1), line, col))
        elif m.group(2):
            out.append(Token("name", m.group(2), line, col))
        else:
            out.append(Token(ch, ch, line, col))
        pos = m.end()
    out.append(Token("end", "", line, pos - line_start + 1))
    return out


class Poly:
    """Expanded polynomial with cyclotomic coefficients, always canonical."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        clean = {}
        for mono, c in (terms or {}).items():
            c = CycScalar.coerce(c)
            if not c.is_zero():
                clean[_pad(mono, n)] = c
        self.terms = dict(sorted(clean.items(), key=lambda kv: _mono_key(kv[0])))

    @classmethod
    def constant(cls, c, n: int = 0) -> "Poly":
        return cls(n, {(0,) * (n + 1): c})

    @classmethod
    def variable(cls, index: int, n: int) -> "Poly":
        """``index`` 0 is ``y``; ``i >= 1`` is ``x_i``."""
        mono = [0] * (n + 1)
        mono[index - 1 if index else n] = 1
        return cls(n, {tuple(mono): 1})

    def widen(self, n: int) -> "Poly":
        return self if n == self.n else Poly(n, {_pad(m, n): c for m, c in self.terms.items()})

    def __add__(self, other: "Poly") -> "Poly":
        n = max(self.n, other.n)
        acc = dict(self.widen(n).terms)
        for m, c in other.widen(n).terms.items():
            acc[m] = acc[m] + c if m in acc else c
        return Poly(n, acc)

    def __neg__(self):
        return Poly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        n = max(self.n, other.n)
        a, b = self.widen(n).terms, other.widen(n).terms
        acc: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(i + j for i, j in zip(m1, m2))
                acc[m] = acc[m] + c1 * c2 if m in acc else c1 * c2
        return Poly(n, acc)

    def __pow__(self, e: int) -> "Poly":
        out = Poly.constant(1, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(self.n, other.n)
        return self.widen(n).terms == other.widen(n).terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    @property
    def y_degree(self) -> int:
        return max((m[-1] for m in self.terms), default=0)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _pad(mono, n: int) -> Mono:
    mono = tuple(mono)
    xs, yd = mono[:-1], mono[-1]
    if len(xs) > n:
        if any(xs[n:]):
            raise ValueError("monomial uses a variable beyond x%d" % n)
        xs = xs[:n]
    return tuple(xs) + (0,) * (n - len(xs)) + (yd,)


def _mono_key(mono: Mono):
    # descending y-degree, then descending total x-degree, then reverse lex
    xs = mono[:-1]
    return (-mono[-1], -sum(xs), tuple(-e for e in xs))


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.max_var = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> Token:
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "integer" if kind == "int" else repr(kind)
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", tok.line, tok.col)
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return node

    def expr(self):
        sign = 1
        if self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        node = self.term()
        if sign < 0:
            node = ("neg", node)
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.base()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind == "-":
                raise ParseError("negative exponents are not allowed", tok.line, tok.col)
            node = ("pow", node, int(self.take("int").text))
        return node

    def base(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            num = int(tok.text)
            if self.peek().kind == "/":
                self.take()
                den_tok = self.take("int")
                if int(den_tok.text) == 0:
                    raise ParseError("zero denominator", den_tok.line, den_tok.col)
                return ("num", Fraction(num, int(den_tok.text)))
            return ("num", Fraction(num))
        if tok.kind == "name":
            self.take()
            if tok.text == "zeta":
                self.take("(")
                m_tok = self.take("int")
                self.take(")")
                if int(m_tok.text) < 1:
                    raise ParseError("zeta order must be positive", m_tok.line, m_tok.col)
                return ("zeta", int(m_tok.text))
            if tok.text == "y":
                return ("var", 0)
            if tok.text.startswith("x"):
                idx = int(tok.text[1:])
                if idx < 1:
                    raise ParseError("variables are numbered from x1", tok.line, tok.col)
                self.max_var = max(self.max_var, idx)
                return ("var", idx)
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected a number, variable or '(', found {got}", tok.line, tok.col)


def parse_ast(text: str):
    """Parse to a nested-tuple syntax tree; returns ``(tree, n)``."""
    p = _Parser(text)
    return p.parse(), p.max_var


def expand(tree, n: int) -> Poly:
    kind = tree[0]
    if kind == "num":
        return Poly.constant(tree[1], n)
    if kind == "zeta":
        return Poly.constant(CycScalar.zeta(tree[1]), n)
    if kind == "var":
        return Poly.variable(tree[1], n)
    if kind == "neg":
        return -expand(tree[1], n)
    if kind == "pow":
        return expand(tree[1], n) ** tree[2]
    a, b = expand(tree[1], n), expand(tree[2], n)
    return {"add": a + b, "sub": a - b, "mul": a * b}[kind]


def parse_poly(text: str, n: int | None = None) -> Poly:
    """Parse and expand; ``n`` forces the number of x-variables."""
    tree, used = parse_ast(text)
    if n is not None and used > n:
        raise ParseError(f"x{used} used but only {n} x-variables are configured")
    return expand(tree, used if n is None else n)


def _coeff_text(c: CycScalar) -> tuple[str, str]:
    """Sign and body of a coefficient, parenthesized when it has several terms."""
    text = format_scalar(c)
    if c.canonical().is_rational():
        return ("-", text[1:]) if text.startswith("-") else ("+", text)
    if " " in text:
        return "+", f"({text})"
    return ("-", text[1:]) if text.startswith("-") else ("+", text)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for mono, c in p.terms.items():
        factors = []
        for i, e in enumerate(mono[:-1]):
            if e:
                factors.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
        if mono[-1]:
            factors.append("y" if mono[-1] == 1 else f"y^{mono[-1]}")
        sign, body = _coeff_text(c)
        if factors and body == "1":
            text = "*".join(factors)
        else:
            text = "*".join([body] + factors)
        pieces.append((sign, text))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


def to_ypoly(p: Poly, weight: Weight) -> YPoly:
    """Convert to a monic :class:`YPoly` over ``weight``."""
    if p.n > weight.n:
        raise ParseError(f"polynomial uses x{p.n} but the weight vector has {weight.n} entries")
    p = p.widen(weight.n)
    d = p.y_degree
    lead = {m: c for m, c in p.terms.items() if m[-1] == d}
    zero = (0,) * weight.n
    if d == 0:
        raise ParseError("polynomial does not involve y")
    if list(lead) != [zero + (d,)]:
        raise ParseError("leading y-coefficient is not a nonzero constant, so f cannot be made monic")
    inv = CycScalar.rational(1) / lead[zero + (d,)]
    terms = {(m[:-1], m[-1]): c * inv for m, c in p.terms.items()}
    return YPoly.from_terms(weight, terms)


def eval_poly_at(p: Poly, weight: Weight, xi):
    """``p(x, xi)`` as a :class:`GSeries` (no monic requirement)."""
    from .series import GSeries

    if p.n > weight.n:
        raise ParseError(f"polynomial uses x{p.n} but the weight vector has {weight.n} entries")
    p = p.widen(weight.n)
    d = p.y_degree
    coeffs = [[] for _ in range(d + 1)]
    for m, c in p.terms.items():
        coeffs[m[-1]].append((m[:-1], c))
    series = [GSeries(weight, cs, exact=True) for cs in coeffs]
    acc = series[d]
    for j in range(d - 1, -1, -1):
        acc = acc * xi + series[j]
    return acc


# ---------------------------------------------------------------------------
# Weight literals
# ---------------------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?:(?P<a>[+-]?\s*{_RAT})(?!\s*\*)\s*)?"
    rf"(?:(?P<sign>[+-])?\s*(?:(?P<b>{_RAT})\s*\*\s*)?sqrt\(\s*(?P<d>\d+)\s*\))?\s*$"
)


def parse_quadreal(text: str) -> QuadReal:
    """Read ``a+b*sqrt(d)``, ``b*sqrt(d)``, ``sqrt(d)`` or a rational."""
    m = _QUAD_RE.match(text)
    if not m or not (m.group("a") or m.group("d")):
        raise ParseError(f"cannot read {text!r} as a+b*sqrt(d)")
    a = Fraction(m.group("a").replace(" ", "")) if m.group("a") else Fraction(0)
    if m.group("d") is None:
        return QuadReal(a)
    if m.group("a") and not m.group("sign"):
        raise ParseError(f"cannot read {text!r} as a+b*sqrt(d)")
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    d = int(m.group("d"))
    if d == 0:
        return QuadReal(a)
    s = 2
    while s * s <= d:
        while d % (s * s) == 0:
            d //= s * s
            b *= s
        s += 1
    try:
        return QuadReal(a, b, d)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_weight(text: str) -> Weight:
    """Comma-separated weight literals, e.g. ``1,0+1*sqrt(2)``."""
    parts = [s for s in text.split(",")]
    if not text.strip() or any(not s.strip() for s in parts):
        raise ParseError(f"empty entry in weight vector {text!r}")
    comps = [parse_quadreal(s) for s in parts]
    try:
        return Weight(comps)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
