"""
Named q-series and eta-quotient expressions.

Builders for f_k = (q^k;q^k)_inf, (q^a;q^b)_inf, the Rogers-Ramanujan
quotient R(q) and the cube f_1^3, plus a small expression language:

    expr   := term (("+"|"-") term)*
    term   := unary (("*"|"/") unary)*
    unary  := "-" unary | factor
    factor := base ("^" sint)?
    base   := "f" uint | "P(" uint "," uint ")" | "R" | "q" | uint
            | "(" expr ")" | "sub(" expr "," uint ")"

``^`` binds tighter than unary minus and does not chain: write ``(f1^2)^3``.
"""

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import series as S
from .series import EXACT, TruncatedSeries

# atom parameters and exponents above this are rejected as overflow
PARAM_LIMIT = 10**12


# ---------------------------------------------------------------------------
# series builders


def _empty(ring, order):
    if ring.is_exact:
        out = np.zeros(order, dtype=object)
        out[:] = 0
        return out
    return np.zeros(order, dtype=np.int64)


@lru_cache(maxsize=512)
def fk_series(k, ring=EXACT, order=100):
    """f_k from the pentagonal number theorem, both signs of m."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = _empty(ring, order)
    out[0] = 1
    m = 1
    while k * m * (3 * m - 1) // 2 < order:
        sign = -1 if m % 2 else 1
        out[k * m * (3 * m - 1) // 2] = sign
        hi = k * m * (3 * m + 1) // 2
        if hi < order:
            out[hi] = sign
        m += 1
    return TruncatedSeries(ring, out)


def f1_cubed_series(ring=EXACT, order=100):
    """Jacobi's sum for f_1^3: coefficients (-1)^m (2m+1) at triangular numbers."""
    out = _empty(ring, order)
    m = 0
    while m * (m + 1) // 2 < order:
        out[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return TruncatedSeries(ring, out)


@lru_cache(maxsize=256)
def pochhammer_series(a, b, ring=EXACT, order=100):
    """The product (q^a; q^b)_inf = prod_{i>=0} (1 - q^(a+ib)), truncated."""
    if not 1 <= a <= b:
        raise ValueError(f"need 1 <= a <= b, got a={a}, b={b}")
    out = _empty(ring, order)
    if order:
        out[0] = 1
    e = a
    while e < order:
        out[e:] = out[e:] - out[:-e]
        if not ring.is_exact:
            out %= ring.modulus
        e += b
    return TruncatedSeries(ring, out)


@lru_cache(maxsize=64)
def rr_series(ring=EXACT, order=100):
    """R(q) = (q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5))."""
    num = S.mul(pochhammer_series(1, 5, ring, order), pochhammer_series(4, 5, ring, order))
    den = S.mul(pochhammer_series(2, 5, ring, order), pochhammer_series(3, 5, ring, order))
    return S.mul(num, S.invert(den))


# ---------------------------------------------------------------------------
# expression tree


class Expr:
    """Base for expression nodes; subclasses are frozen dataclasses."""


@dataclass(frozen=True)
class FK(Expr):
    k: int


@dataclass(frozen=True)
class Pochhammer(Expr):
    a: int
    b: int


@dataclass(frozen=True)
class RR(Expr):
    pass


@dataclass(frozen=True)
class Q(Expr):
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    v: int


@dataclass(frozen=True)
class Neg(Expr):
    x: Expr


@dataclass(frozen=True)
class Add(Expr):
    l: Expr
    r: Expr


@dataclass(frozen=True)
class Sub(Expr):
    l: Expr
    r: Expr


@dataclass(frozen=True)
class Mul(Expr):
    l: Expr
    r: Expr


@dataclass(frozen=True)
class Div(Expr):
    l: Expr
    r: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    e: int


@dataclass(frozen=True)
class Subst(Expr):
    inner: Expr
    k: int


class ExprSyntaxError(ValueError):
    def __init__(self, msg, pos, text=""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(sub|[fPRq])|([-+*/^(),]))")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        start = mt.start(mt.lastindex)
        if mt.group(1) is not None:
            toks.append(("int", int(mt.group(1)), start))
        elif mt.group(2) is not None:
            toks.append(("name", mt.group(2), start))
        else:
            toks.append(("op", mt.group(3), start))
        pos = mt.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(msg, tok[2], self.text)

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise self.error(f"expected {op!r}", tok)
        return tok

    def uint(self, what, lo=1):
        tok = self.take()
        if tok[0] != "int":
            raise self.error(f"expected integer {what}", tok)
        if tok[1] > PARAM_LIMIT:
            raise self.error(f"integer overflow in {what}", tok)
        if tok[1] < lo:
            raise self.error(f"{what} must be >= {lo}", tok)
        return tok[1]

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        node = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            node = Pow(node, sign * self.uint("exponent", lo=0))
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                raise self.error("'^' is non-associative; use parentheses")
        return node

    def base(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return IntLit(val)
        if kind == "name":
            if val == "f":
                return FK(self.uint("f index"))
            if val == "R":
                return RR()
            if val == "q":
                return Q()
            if val == "P":
                self.expect("(")
                a = self.uint("Pochhammer offset")
                self.expect(",")
                b = self.uint("Pochhammer step")
                self.expect(")")
                if a > b:
                    raise self.error(f"P({a},{b}) needs a <= b", tok)
                return Pochhammer(a, b)
            if val == "sub":
                self.expect("(")
                inner = self.expr()
                self.expect(",")
                k = self.uint("substitution power")
                self.expect(")")
                return Subst(inner, k)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise self.error("unexpected token" if kind != "end" else "unexpected end of input", tok)


def parse_expr(text):
    """Parse an eta-quotient expression into an ``Expr`` tree."""
    return _Parser(text).parse()


_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def format_expr(e):
    """Render an expression back to text that ``parse_expr`` accepts."""

    def wrap(child, min_prec):
        s = format_expr(child)
        return f"({s})" if _PREC.get(type(child), 5) < min_prec else s

    if isinstance(e, FK):
        return f"f{e.k}"
    if isinstance(e, Pochhammer):
        return f"P({e.a},{e.b})"
    if isinstance(e, RR):
        return "R"
    if isinstance(e, Q):
        return "q"
    if isinstance(e, IntLit):
        return str(e.v)
    if isinstance(e, Subst):
        return f"sub({format_expr(e.inner)},{e.k})"
    if isinstance(e, Neg):
        return "-" + wrap(e.x, 3)
    if isinstance(e, Pow):
        return f"{wrap(e.base, 5)}^{e.e}"
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        return f"{wrap(e.l, 1)} {op} {wrap(e.r, 2)}"
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        return f"{wrap(e.l, 2)}{op}{wrap(e.r, 3)}"
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# evaluation


def _inner_order(order, k):
    # coefficients of an inner series needed to fix ``order`` terms after q -> q^k
    return -(-order // k)


def eval_expr(e, ring=EXACT, order=100):
    """Evaluate an expression (tree or text) to a truncated series."""
    if isinstance(e, str):
        e = parse_expr(e)
    return _eval(e, ring, order, {})


def _eval(e, ring, order, memo):
    key = (e, order)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = _eval_node(e, ring, order, memo)
    memo[key] = out
    return out


def _eval_node(e, ring, order, memo):
    if isinstance(e, FK):
        return fk_series(e.k, ring, order)
    if isinstance(e, Pochhammer):
        return pochhammer_series(e.a, e.b, ring, order)
    if isinstance(e, RR):
        return rr_series(ring, order)
    if isinstance(e, Q):
        return S.monomial(1, ring, order)
    if isinstance(e, IntLit):
        return S.constant(e.v, ring, order)
    if isinstance(e, Neg):
        return S.neg(_eval(e.x, ring, order, memo))
    if isinstance(e, Add):
        return S.add(_eval(e.l, ring, order, memo), _eval(e.r, ring, order, memo))
    if isinstance(e, Sub):
        return S.sub(_eval(e.l, ring, order, memo), _eval(e.r, ring, order, memo))
    if isinstance(e, Mul):
        return S.mul(_eval(e.l, ring, order, memo), _eval(e.r, ring, order, memo))
    if isinstance(e, Div):
        return S.mul(_eval(e.l, ring, order, memo), S.invert(_eval(e.r, ring, order, memo)))
    if isinstance(e, Pow):
        if isinstance(e.base, FK) and e.base.k > 1:
            # f_k^e is f_1^e with q -> q^k; only order/k coefficients are needed
            k = e.base.k
            inner = S.power(fk_series(1, ring, _inner_order(order, k)), e.e)
            return S.subst_qk(inner, k, order)
        return S.power(_eval(e.base, ring, order, memo), e.e)
    if isinstance(e, Subst):
        inner = _eval(e.inner, ring, _inner_order(order, e.k), memo)
        return S.subst_qk(inner, e.k, order)
    raise TypeError(f"not an expression node: {e!r}")


def tuple_gf_expr(t, k):
    """f_t^(t*k) / f_1^k, the generating function of k-tuples of t-cores."""
    return Div(Pow(FK(t), t * k), Pow(FK(1), k))
