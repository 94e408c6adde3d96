"""A small expression parser shared by all element grammars.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' ['-'] INT]
    atom   := INT | NAME | '(' expr ')'

Names are resolved by a caller-supplied function, so the same parser reads
finite-field elements (``w^2 + 1``), rational functions (``(u^2+u)/(u+1)``),
graded polynomials (``u*t^-2*T1^2 + T2``) and skew polynomials
(``u + u^3*F^3``). Evaluation is left to right, which matters for the
noncommutative skew ring.
"""

from __future__ import annotations

import re
from typing import Any, Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        if m.group(1):
            out.append(("int", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        elif m.group(3) and not m.group(3).isspace():
            out.append(("op", m.group(3)))
    return out


class _Parser:
    def __init__(self, text: str, symbol: Callable[[str], Any], integer: Callable[[int], Any]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.symbol = symbol
        self.integer = integer

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        v = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.factor()
            v = v * w if op == "*" else v / w
        return v

    def factor(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            elif self.peek() == ("op", "("):
                # allow t^(-2)
                self.take()
                if self.peek() == ("op", "-"):
                    self.take()
                    neg = True
                e = int(self.take("int")[1])
                self.take("op", ")")
                return v ** (-e if neg else e)
            e = int(self.take("int")[1])
            v = v ** (-e if neg else e)
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return self.integer(int(val))
        if kind == "name":
            self.take()
            return self.symbol(val)
        if (kind, val) == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_expression(text: str, symbol: Callable[[str], Any], integer: Callable[[int], Any]):
    return _Parser(text, symbol, integer).parse()


def parse_field_element(text: str, field):
    from .fields import GF, RationalFunctionField

    if isinstance(field, GF):

        def symbol(name):
            if name == "w" and field.m > 1:
                return field.from_vector([0, 1])
            raise ParseError(f"unknown symbol {name!r} for {field}")

    elif isinstance(field, RationalFunctionField):

        def symbol(name):
            if name == field.var:
                return field.gen()
            if name == "w" and field.base.m > 1:
                return field(field.base.from_vector([0, 1]))
            raise ParseError(f"unknown symbol {name!r} for {field}")

    else:
        raise TypeError(field)
    return parse_expression(text, symbol, field)
