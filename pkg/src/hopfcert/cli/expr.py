"""A tiny polynomial expression language in the single variable ``a``.

Grammar (lowest precedence first)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" exponent)?
    atom   := NUMBER | "a" | "(" expr ")"

``/`` is only allowed with a constant divisor.  Numbers are decimal or
integer literals and are read exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..algebra import UniPoly

VARIABLE = "a"
MAX_EXPONENT = 256


class ExprError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.message, self.line, self.column = message, line, col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Lit, Var, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|([A-Za-z_]\w*)|(.))", re.S)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprError(msg, self.text, tok[2])

    def parse(self) -> Expr:
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            e = BinOp(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        t = self.peek()
        if t[0] == "op" and t[1] in ("-", "+"):
            self.take()
            arg = self.unary()
            return Neg(arg) if t[1] == "-" else arg
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            value = expand(self.exponent_atom())
            if value.degree > 0:
                self.error("exponent must be a constant", tok)
            k = value.coeff(0)
            if k < 0:
                self.error("negative exponent", tok)
            if k.denominator != 1:
                self.error("exponent must be an integer", tok)
            if k > MAX_EXPONENT:
                self.error(f"exponent larger than {MAX_EXPONENT}", tok)
            return Pow(base, int(k))
        return base

    def exponent_atom(self) -> Expr:
        t = self.peek()
        if t[0] == "op" and t[1] in ("-", "+"):
            self.take()
            arg = self.exponent_atom()
            return Neg(arg) if t[1] == "-" else arg
        return self.atom()

    def atom(self) -> Expr:
        t = self.take()
        if t[0] == "num":
            return Lit(Fraction(t[1]))
        if t[0] == "id":
            if t[1] != VARIABLE:
                self.error(f"unknown identifier {t[1]!r} (only '{VARIABLE}' is allowed)", t)
            return Var(t[1])
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            if self.peek()[1] != ")" or self.peek()[0] != "op":
                self.error("expected ')'")
            self.take()
            return e
        if t[0] == "end":
            self.error("unexpected end of expression", t)
        self.error(f"unexpected {t[1]!r}", t)


def parse(text: str) -> Expr:
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return _Parser(text).parse()


def expand(e: Expr) -> UniPoly:
    """Exact dense expansion of an expression tree into a polynomial in ``a``."""
    if isinstance(e, Lit):
        return UniPoly([e.value], VARIABLE)
    if isinstance(e, Var):
        return UniPoly([0, 1], VARIABLE)
    if isinstance(e, Neg):
        return -expand(e.arg)
    if isinstance(e, Pow):
        return expand(e.base) ** e.exponent
    left, right = expand(e.left), expand(e.right)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if right.degree > 0:
        raise ValueError("division is only allowed by a constant")
    if right.is_zero():
        raise ZeroDivisionError("division by zero")
    return left * UniPoly([1 / right.coeff(0)], VARIABLE)


def parse_poly(text: str) -> UniPoly:
    """Parse and expand in one step, reporting position for every error."""
    tree = parse(text)
    try:
        return expand(tree)
    except (ValueError, ZeroDivisionError) as exc:
        raise ExprError(str(exc), text, 0) from None
