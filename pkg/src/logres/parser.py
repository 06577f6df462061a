"""Recursive-descent parser for polynomial text.

Grammar (whitespace insignificant)::

    expr    := sign? term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('+' | '-') factor | atom ('^' INT)?
    atom    := INT | NAME | '(' expr ')'

``NAME`` is a variable of the ring or its parameter.  Products need an explicit
``*``.  The divisor of ``/`` must be a nonzero constant (it may involve the
parameter), so every rendered polynomial parses back to itself.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .poly import Polynomial, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", pos=start + 1)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, pos=tok[2] + 1)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        acc = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                tok = self.take()
                rhs = self.factor()
                if val == "*":
                    acc = acc * rhs
                else:
                    if not rhs.is_constant():
                        raise self.error("divisor must be a constant", tok)
                    c = rhs.constant_term()
                    if not c:
                        raise self.error("division by zero", tok)
                    acc = acc.scale(1 / c)
            else:
                return acc

    def factor(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.factor()
            return -inner if val == "-" else inner
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a non-negative integer", tok)
            return base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        ring = self.ring
        if kind == "int":
            return ring.const(Fraction(val))
        if kind == "name":
            if val in ring.names:
                return ring.var(val)
            if ring.param is not None and val == ring.param:
                return ring.const(ring.param_element())
            raise self.error(f"unknown variable {val!r}", tok)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {val!r}", tok)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` into a polynomial over ``ring``."""
    return _Parser(text, ring).parse()


def parse_constant(text: str, param: str = "t"):
    """Parse a scalar expression in the parameter (an element of Q or Q(t))."""
    ring = Ring(("_",), param=param)
    p = parse_polynomial(text, ring)
    if not p.is_constant():
        raise ParseError(f"not a constant: {text!r}")
    return p.constant_term()
