"""Text grammar for polynomials, operators and localized fractions.

::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ['^' INT]
    atom    := INT ['/' INT] | 'x' INT | 'D[' INT ',' INT ']' | '(' expr ')'

``D[i,t]`` is the divided power D_{t,i}.  ``*`` is composition in written
order, so ``D[1,1]*x1`` normalises to ``x1*D[1,1] + 1``.  Whitespace is
ignored.  A fraction in R_f is written ``<poly> / f^<j>``.
"""

from __future__ import annotations

import re

from .field import FieldSpec
from .poly import Polynomial
from .weyl import DiffOp


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<x>x(?P<xi>\d+))|(?P<d>D\[\s*(?P<di>\d+)\s*,\s*(?P<dt>\d+)\s*\])|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastgroup)
        if m.group("int") is not None:
            toks.append(("int", int(m.group("int")), start))
        elif m.group("x") is not None:
            toks.append(("x", int(m.group("xi")), start))
        elif m.group("d") is not None:
            toks.append(("D", (int(m.group("di")), int(m.group("dt"))), start))
        else:
            toks.append((m.group("op"), None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int, field: FieldSpec):
        self.text = text
        self.n = n
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self) -> DiffOp:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        total = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> DiffOp:
        out = self.factor()
        while self.peek()[0] == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> DiffOp:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            e = self.take("int")[1]
            base = base**e
        return base

    def atom(self) -> DiffOp:
        kind, val, pos = self.peek()
        n, k = self.n, self.field
        if kind == "int":
            self.take()
            if self.peek()[0] == "/" and self.toks[self.i + 1][0] == "int":
                self.take()
                den_tok = self.take("int")
                if den_tok[1] == 0:
                    raise ParseError("zero denominator", self.text, den_tok[2])
                return DiffOp.scalar(k.div(k.reduce(val), k.reduce(den_tok[1])), n, k)
            return DiffOp.scalar(val, n, k)
        if kind == "x":
            self.take()
            if not 1 <= val <= n:
                raise ParseError(f"variable x{val} outside x1..x{n}", self.text, pos)
            return DiffOp.x(val, n, k)
        if kind == "D":
            self.take()
            i, t = val
            if not 1 <= i <= n:
                raise ParseError(f"D[{i},{t}] acts on a variable outside 1..{n}", self.text, pos)
            return DiffOp.D(t, i, n, k)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError("expected a number, variable, D[i,t] or '('", self.text, pos)


def parse_operator(text: str, n: int, field: FieldSpec) -> DiffOp:
    p = _Parser(text, n, field)
    out = p.expr()
    p.take("end")
    return out


def parse_polynomial(text: str, n: int, field: FieldSpec) -> Polynomial:
    op = parse_operator(text, n, field)
    if not op.is_polynomial():
        raise ParseError("divided powers are not allowed in a polynomial", text, text.find("D"))
    return op.to_poly()


_FRACTION = re.compile(r"^(?P<num>.*)/\s*f\s*\^\s*(?P<exp>\d+)\s*$", re.S)


def parse_fraction(text: str, context):
    """Parse ``<poly> / f^<j>`` against a :class:`~hasse_dmod.localize.LocalizedContext`.

    A bare polynomial is read as ``<poly> / f^0``.
    """
    from .localize import LocalizedFraction

    m = _FRACTION.match(text)
    if m:
        num_text, exp = m.group("num"), int(m.group("exp"))
    else:
        num_text, exp = text, 0
    num = parse_polynomial(num_text, context.n, context.field)
    return LocalizedFraction(num, exp, context)
