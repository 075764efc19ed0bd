"""Expression parser shared by the command line.

Character expressions::

    loop(g1 g2^-1) * arc(e.p1, g1.p2) - 3/2 * (loop(g1) + 1)^2

Trace expressions over the mixed alphabet::

    tr(X(1)*Th(1,2)) * Xi(2) + 2

Grammar (``^`` binds tightest, unary minus next)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER ("/" NUMBER)? | "(" expr ")" | call
    call   := loop(WORD) | arc(POINT, POINT)                      (char mode)
            | X(INT) | Xi(INT) | Th(INT, INT) | tr(expr)           (trace mode)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .charalg import CharAlgebra, CharPoly
from .groupact import MarkedPoint, WordSyntaxError, parse_point, parse_word
from .tracealg import MIXED, ConExpr, InvExpr, Th, X, Xi


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")

    def render(self) -> str:
        return f"{self.message} at position {self.pos}\n  {self.text}\n  {' ' * self.pos}^"


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


_TOKENS = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos and pos >= len(text):
            break
        if m.group(1):
            out.append(Token("num", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(Token("op", m.group(3), m.start(3)))
        else:
            break
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, mode: str, alg: Optional[CharAlgebra]):
        self.text = text
        self.mode = mode
        self.alg = alg
        self.toks = tokenize(text)
        self.i = 0

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, pos: Optional[int] = None):
        raise ParseError(message, self.text, self.tok.pos if pos is None else pos)

    def take(self, text: str) -> Token:
        if self.tok.text != text:
            want = repr(text)
            got = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            self.error(f"expected {want}, found {got}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "num":
            self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return -v if neg else v

    def raw_until(self, stops: str) -> tuple:
        """Source text up to (not including) the next top-level stop char."""
        start = self.tok.pos
        depth = 0
        while self.tok.kind != "end":
            if self.tok.kind == "op":
                if self.tok.text == "(":
                    depth += 1
                elif self.tok.text == ")":
                    if depth == 0 and ")" in stops:
                        break
                    depth -= 1
                elif self.tok.text in stops and depth == 0:
                    break
            self.i += 1
        return self.text[start:self.tok.pos], start

    # grammar
    def parse(self):
        if self.tok.kind == "end":
            self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self):
        e = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self):
        e = self.unary()
        while self.accept("*"):
            e = e * self.unary()
        return e

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        start = self.tok.pos
        base = self.atom()
        if self.accept("^"):
            k = self.integer()
            if k < 0:
                self.error("negative powers are not allowed", start)
            out = self._one()
            for _ in range(k):
                out = out * base
            return out
        return base

    def _one(self):
        return self.alg.one if self.mode == "char" else ConExpr.identity(MIXED)

    def _const(self, c: Fraction):
        if self.mode == "char":
            return self.alg.const(c)
        return ConExpr.identity(MIXED) * c

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            num = Fraction(int(t.text))
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    self.error("division by zero", t.pos)
                num = num / den
            return self._const(num)
        if self.accept("("):
            e = self.expr()
            self.take(")")
            return e
        if t.kind == "name":
            self.i += 1
            return self.call(t)
        self.error("expected a number, '(' or a function" if t.kind != "end" else "unexpected end of input")

    def call(self, t: Token):
        name = t.text
        char_fns = ("loop", "arc")
        trace_fns = ("X", "Xi", "Th", "tr")
        if name in char_fns and self.mode != "char" or name in trace_fns and self.mode != "trace":
            self.error(f"{name}(...) is not available in {self.mode} expressions", t.pos)
        if name not in char_fns + trace_fns:
            self.error(f"unknown function {name!r}", t.pos)
        self.take("(")
        if name == "loop":
            text, pos = self.raw_until(")")
            w = self._word(text, pos)
            self.take(")")
            return self._guard(lambda: self.alg.loop(w), pos)
        if name == "arc":
            t1, p1 = self.raw_until(",")
            p = self._point(t1, p1)
            self.take(",")
            t2, p2 = self.raw_until(")")
            q = self._point(t2, p2)
            self.take(")")
            self._guard(lambda: self.alg.pres.check_point(p), p1)
            self._guard(lambda: self.alg.pres.check_point(q), p2)
            return self.alg.arc(p, q)
        if name == "tr":
            e = self.expr()
            self.take(")")
            return ConExpr.scalar(e.tr() if isinstance(e, ConExpr) else e)
        pos = self.tok.pos
        i = self.integer()
        if name == "Th":
            self.take(",")
            k = self.integer()
            self.take(")")
            if i < 1 or k < 1:
                self.error("indices must be >= 1", pos)
            return ConExpr.word(MIXED, (Th(i, k),))
        self.take(")")
        if i < 1:
            self.error("index must be >= 1", pos)
        return ConExpr.word(MIXED, ((X if name == "X" else Xi)(i),))

    def _word(self, text: str, pos: int):
        try:
            return parse_word(text.strip())
        except WordSyntaxError as exc:
            self.error(str(exc), pos)

    def _point(self, text: str, pos: int) -> MarkedPoint:
        try:
            return parse_point(text.strip())
        except WordSyntaxError as exc:
            self.error(str(exc), pos)

    def _guard(self, fn, pos):
        try:
            return fn()
        except ValueError as exc:  # out-of-range generator or orbit
            self.error(str(exc), pos)


def parse_char(text: str, alg: CharAlgebra) -> CharPoly:
    """Parse a character expression into ``alg``."""
    return _Parser(text, "char", alg).parse()


def parse_trace(text: str):
    """Parse a mixed trace expression; returns an :class:`InvExpr` when no
    matrix-valued term survives, else a :class:`ConExpr`."""
    e = _Parser(text, "trace", None).parse()
    if all(not w for (_, w) in e.terms):
        out = InvExpr(MIXED)
        for (inv, _), c in e.terms.items():
            out = out + InvExpr(MIXED, {inv: c})
        return out
    return e
