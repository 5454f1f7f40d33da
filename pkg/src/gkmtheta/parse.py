"""Parser for polynomial text such as ``x1^2 - 3/2*x1*x2 + (x2 - x3)^3``.

Grammar (whitespace insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

Division is only allowed by a nonzero constant, which is how rational
literals ``p/q`` are written.  Names must come from the declared variable
list.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .exactpoly import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    """Malformed polynomial text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, text="", offset=0):
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.offset = offset
        self.reason = message
        super().__init__(f"line {self.line}, column {self.column}: {message}")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.names = {n: i for i, n in enumerate(names)}
        self.rank = len(names)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {found}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division only by a nonzero constant", self.text, pos)
                value = value / rhs.constant_value()
        return value

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("'^' needs a non-negative integer literal", self.text, tok[2])
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Polynomial.constant(self.rank, Fraction(int(value)))
        if kind == "name":
            self.take()
            if value not in self.names:
                raise ParseError(f"unknown variable {value!r}", self.text, pos)
            return Polynomial.variable(self.rank, self.names[value])
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        found = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {found}", self.text, pos)


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse ``text`` into a Polynomial over the variables ``names``.

    Raises:
        ParseError: with the line and column of the offending token.
    """
    if not isinstance(text, str):
        raise ParseError(f"polynomial must be a string, got {type(text).__name__}")
    parser = _Parser(text, list(names))
    if parser.peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)
    value = parser.expr()
    parser.take("end")
    return value
