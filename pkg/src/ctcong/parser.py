"""Text syntax for Laurent polynomials, e.g. ``2+x+1/x`` or ``(1+y)*(1+1/x)``.

Grammar (no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' signed-int)?
    atom   := '(' expr ')' | identifier | integer

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``. A divisor
must evaluate to a single term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .laurent import LaurentPoly, render


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


class NonMonomialDivisor(ParseError):
    pass


class DivisionByZero(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    if not src.isascii():
        raise ParseError("only ASCII input is supported")
    tokens = []
    pos = 0
    while src[pos:].strip():
        m = _TOKEN.match(src, pos)
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


# -- syntax tree --------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.advance()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return tok

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            tok = self.advance()
            node = BinOp(tok.text, node, self.term(), tok.pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/") and self.peek().kind == "op":
            tok = self.advance()
            node = BinOp(tok.text, node, self.unary(), tok.pos)
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.unary(), tok.pos)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            sign = 1
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text in "+-":
                self.advance()
                sign = -1 if nxt.text == "-" else 1
            num = self.advance()
            if num.kind != "int":
                raise ParseError("exponent must be an integer literal", num.pos)
            return Pow(base, sign * int(num.text), tok.pos)
        return base

    def atom(self):
        tok = self.advance()
        if tok.kind == "int":
            return Num(int(tok.text), tok.pos)
        if tok.kind == "name":
            return Var(tok.text, tok.pos)
        if tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def parse_expr(src: str):
    """Parse to a syntax tree without evaluating."""
    return _Parser(src).parse()


def _invert_term(P: LaurentPoly, pos: int):
    """Return (coefficient, inverse monomial) for a single-term polynomial."""
    if P.is_zero():
        raise DivisionByZero("division by zero", pos)
    if len(P) != 1:
        raise NonMonomialDivisor(f"divisor {render(P)} is not a single term", pos)
    (e, c), = P.terms.items()
    return c, LaurentPoly({tuple(-i for i in e): 1}, P.vars)


def _divide(a: LaurentPoly, b: LaurentPoly, pos: int) -> LaurentPoly:
    c, inv = _invert_term(b, pos)
    if any(v % c for v in a.terms.values()):
        raise ParseError(f"coefficients of {render(a)} are not divisible by {c}", pos)
    return LaurentPoly({e: v // c for e, v in a.terms.items()}, a.vars) * inv


def evaluate(node) -> LaurentPoly:
    if isinstance(node, Num):
        return LaurentPoly.constant(node.value)
    if isinstance(node, Var):
        return LaurentPoly.var(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    if isinstance(node, Pow):
        base = evaluate(node.base)
        if node.exponent >= 0:
            return base**node.exponent
        c, inv = _invert_term(base, node.pos)
        if c not in (1, -1):
            raise ParseError(f"cannot invert coefficient {c}", node.pos)
        return (inv * c) ** -node.exponent
    if isinstance(node, BinOp):
        a, b = evaluate(node.left), evaluate(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return _divide(a, b, node.pos)
    raise TypeError(f"not a syntax node: {node!r}")


def parse_poly(src: str) -> LaurentPoly:
    return evaluate(parse_expr(src))


def render_poly(P: LaurentPoly) -> str:
    return render(P)
