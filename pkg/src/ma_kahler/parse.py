"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is ignored)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := power (('*'|'/') power | power)*     # juxtaposition multiplies
    power   := atom (('^'|'**') INT)?
    atom    := INT | NAME | '(' expr ')' | ('+'|'-') power

``/`` only accepts a nonzero constant on its right, so ``x1/2`` and
``1/3 x1^2`` both work while ``1/x1`` is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = {name: k for k, name in enumerate(names)}
        self.nvars = len(names)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, op):
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Polynomial:
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return result

    def expr(self):
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                divisor = self.power()
                if not divisor.is_constant() or divisor.is_zero():
                    raise ParseError("division only by a nonzero constant", pos)
                acc = acc / divisor.constant_term()
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            kind, val, epos = self.peek()
            if kind == "op" and val == "-":
                raise ParseError("negative exponent", epos)
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", epos)
            self.take()
            return base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return Polynomial.constant(Fraction(int(val)), self.nvars)
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(self.names[val], self.nvars)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, v, p = self.take()
            if not (kind == "op" and v == ")"):
                raise ParseError("expected ')'", p)
            return inner
        if kind == "op" and val in "+-":
            operand = self.power()
            return -operand if val == "-" else operand
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_expression(text: str, names: Sequence[str] = ("x1", "x2")) -> Polynomial:
    """Parse ``text`` into a Polynomial over the variables ``names``.

    >>> parse_expression("(1+x1)*(1+x2)").to_string()
    'x1*x2 + x1 + x2 + 1'
    """
    names = list(names)
    if not names:
        raise ValueError("at least one variable name is required")
    if len(set(names)) != len(names):
        raise ValueError("variable names must be distinct")
    return _Parser(text, names).parse()
