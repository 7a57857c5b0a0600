"""A small expression language for eta quotients and theta products.

Grammar (whitespace is insignificant)::

    expr      := term (('+' | '-') term)*
    term      := factor (('*' | '/') factor)*
    factor    := atom ('^' ('-')? integer)?
    atom      := integer | 'q^' integer | 'l' integer
               | 'phi(q^' integer ')' | 'psi(q^' integer ')'
               | 'f(' signedmono ',' signedmono ')'
               | 'poch(' signedmono ',' 'q^' integer ')'
               | '(' expr ')'
    signedmono := ('-')? 'q^' integer

``l<n>`` is the eta symbol (q^n; q^n)_inf and ``poch(s q^a, q^b)`` the infinite
product (s q^a; q^b)_inf.  Trees print back to canonical text with the fewest
parentheses that preserve their shape, so ``parse_qexpr(to_text(e)) == e`` for
every tree and ``canonical(text) == text`` for canonical text.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Union

from .builders import ThetaAtom, eta_series, qpoch, theta_series
from .series import EXACT, NonUnitError, Ring, TruncatedSeries, div_unit, power


class QExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Mono:
    exponent: int


@dataclass(frozen=True)
class Eta:
    n: int


@dataclass(frozen=True)
class Theta:
    atom: ThetaAtom


@dataclass(frozen=True)
class Poch:
    sign: int
    a: int
    b: int


@dataclass(frozen=True)
class Pow:
    base: "QExpr"
    exponent: int


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "QExpr"
    right: "QExpr"


QExpr = Union[Num, Mono, Eta, Theta, Poch, Pow, BinOp]

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def _mono_text(sign: int, exp: int) -> str:
    return f"{'-' if sign < 0 else ''}q^{exp}"


def to_text(e: QExpr) -> str:
    """Canonical text of an expression tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Mono):
        return f"q^{e.exponent}"
    if isinstance(e, Eta):
        return f"l{e.n}"
    if isinstance(e, Theta):
        t = e.atom
        if t.kind in ("phi", "psi"):
            return f"{t.kind}(q^{t.scale})"
        return f"f({_mono_text(t.c_sign, t.c_exp)},{_mono_text(t.d_sign, t.d_exp)})"
    if isinstance(e, Poch):
        return f"poch({_mono_text(e.sign, e.a)},q^{e.b})"
    if isinstance(e, Pow):
        base = to_text(e.base)
        if isinstance(e.base, (BinOp, Pow)):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    prec = _PRECEDENCE[e.op]
    left, right = to_text(e.left), to_text(e.right)
    if isinstance(e.left, BinOp) and _PRECEDENCE[e.left.op] < prec:
        left = f"({left})"
    if isinstance(e.right, BinOp) and _PRECEDENCE[e.right.op] <= prec:
        right = f"({right})"
    return f"{left}{e.op}{right}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise QExprSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, token: str) -> bool:
        self.skip()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.accept(token):
            self.error(f"expected {token!r}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse(self) -> QExpr:
        e = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return e

    def expr(self) -> QExpr:
        e = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> QExpr:
        e = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            e = BinOp(op, e, self.factor())
        return e

    def factor(self) -> QExpr:
        e = self.atom()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            e = Pow(e, sign * self.integer())
        return e

    def signed_mono(self) -> tuple[int, int]:
        sign = -1 if self.accept("-") else 1
        self.expect("q^")
        return sign, self.integer()

    def atom(self) -> QExpr:
        c = self.peek()
        if c.isdigit():
            return Num(self.integer())
        if c == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("q^"):
            return Mono(self.integer())
        start = self.pos
        for kind in ("phi", "psi"):
            if self.accept(kind + "("):
                self.expect("q^")
                k = self.integer()
                if k < 1:
                    self.pos = start
                    self.error(f"{kind} scale must be >= 1")
                self.expect(")")
                return Theta(ThetaAtom.phi(k) if kind == "phi" else ThetaAtom.psi(k))
        if self.accept("poch("):
            sign, a = self.signed_mono()
            self.expect(",")
            self.expect("q^")
            b = self.integer()
            self.expect(")")
            if a < 1 or b < 1:
                self.pos = start
                self.error("poch needs exponents >= 1")
            return Poch(sign, a, b)
        if self.accept("f("):
            cs, ce = self.signed_mono()
            self.expect(",")
            ds, de = self.signed_mono()
            self.expect(")")
            try:
                return Theta(ThetaAtom.general(cs, ce, ds, de))
            except ValueError as exc:
                self.pos = start
                self.error(str(exc))
        if c == "l" and self.text[self.pos + 1: self.pos + 2].isdigit():
            self.pos += 1
            n = self.integer()
            if n < 1:
                self.pos = start
                self.error("eta index must be >= 1")
            return Eta(n)
        if c.isalpha():
            end = self.pos
            while end < len(self.text) and self.text[end].isalnum():
                end += 1
            self.error(f"unknown identifier {self.text[self.pos:end]!r}")
        self.error("expected an atom" if c else "unexpected end of input")


def parse_qexpr(text: str) -> QExpr:
    return _Parser(text).parse()


def canonical(text: str) -> str:
    return to_text(parse_qexpr(text))


def symbols(e: QExpr):
    """Yield every leaf of the tree."""
    if isinstance(e, Pow):
        yield from symbols(e.base)
    elif isinstance(e, BinOp):
        yield from symbols(e.left)
        yield from symbols(e.right)
    else:
        yield e


class Evaluator:
    """Evaluate trees to a fixed order and ring, memoizing leaf series.

    The memo is lock-protected so one evaluator can be shared across threads.
    """

    def __init__(self, order: int, ring: Ring = EXACT):
        self.order = order
        self.ring = ring
        self._memo: dict[QExpr, TruncatedSeries] = {}
        self._lock = threading.Lock()

    def leaf(self, e: QExpr) -> TruncatedSeries:
        with self._lock:
            cached = self._memo.get(e)
        if cached is not None:
            return cached
        n, ring = self.order, self.ring
        if isinstance(e, Num):
            s = TruncatedSeries.constant(e.value, n, ring)
        elif isinstance(e, Mono):
            s = TruncatedSeries.monomial(e.exponent, n, ring)
        elif isinstance(e, Eta):
            s = eta_series(e.n, n, ring)
        elif isinstance(e, Theta):
            s = theta_series(e.atom, n, ring)
        elif isinstance(e, Poch):
            s = qpoch(e.sign, e.a, 1, e.b, n, ring)
        else:
            raise TypeError(f"not a leaf: {e!r}")
        with self._lock:
            self._memo[e] = s
        return s

    def __call__(self, e: QExpr) -> TruncatedSeries:
        if isinstance(e, Pow):
            return power(self(e.base), e.exponent)
        if isinstance(e, BinOp):
            left, right = self(e.left), self(e.right)
            if e.op == "+":
                return left + right
            if e.op == "-":
                return left - right
            if e.op == "*":
                return left * right
            try:
                return div_unit(left, right)
            except NonUnitError as exc:
                raise NonUnitError(f"denominator {to_text(e.right)} is not invertible: {exc}") from None
        return self.leaf(e)


def eval_qexpr(e: QExpr | str, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    if isinstance(e, str):
        e = parse_qexpr(e)
    return Evaluator(order, ring)(e)
