"""Germ expressions such as "y^2 - x^3" or "3x^2*y + y^5".

    germ   := term (('+' | '-') term)*
    term   := [sign] [integer] ('*'? factor)*
    factor := ('x' | 'y') ['^' nat]
"""
from __future__ import annotations

import re

from .errors import NotAGerm, UsageError
from .jets import GermSpec
from .poly import format_terms

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class GermSyntaxError(UsageError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("int", int(num), start))
        elif name is not None:
            # "xy" or "x2y" style juxtaposition: split into single letters
            for k, ch in enumerate(name):
                if ch in "xy":
                    out.append(("var", ch, start + k))
                elif ch.isdigit():
                    raise GermSyntaxError("exponent needs '^'", start + k)
                else:
                    raise GermSyntaxError(f"unknown variable {ch!r}", start + k)
        else:
            out.append(("sym", sym, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_sym(self, s):
        t = self.take()
        if t[0] != "sym" or t[1] != s:
            raise GermSyntaxError(f"expected {s!r}", t[2])

    def germ(self) -> dict:
        terms: dict = {}
        self.term(terms, 1)
        while True:
            kind, val, pos = self.peek()
            if kind == "end":
                return terms
            if kind == "sym" and val in "+-":
                self.take()
                self.term(terms, 1 if val == "+" else -1)
            else:
                raise GermSyntaxError(f"unexpected {val!r}", pos)

    def term(self, terms: dict, sign: int):
        kind, val, pos = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            sign *= -1 if val == "-" else 1
            kind, val, pos = self.peek()
        coeff = 1
        seen = False
        if kind == "int":
            self.take()
            coeff = val
            seen = True
        i = j = 0
        while True:
            kind, val, pos = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                kind, val, pos = self.peek()
                if kind != "var":
                    raise GermSyntaxError("expected 'x' or 'y' after '*'", pos)
            if kind != "var":
                break
            self.take()
            e = 1
            if self.peek()[0] == "sym" and self.peek()[1] == "^":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise GermSyntaxError("expected exponent", p2)
                e = v2
            if val == "x":
                i += e
            else:
                j += e
            seen = True
        if not seen:
            raise GermSyntaxError("expected a term", pos)
        terms[(i, j)] = terms.get((i, j), 0) + sign * coeff


def parse_germ(text: str) -> GermSpec:
    if not isinstance(text, str):
        raise UsageError("germ text must be a string")
    terms = _Parser(text).germ()
    terms = {k: v for k, v in terms.items() if v}
    if terms.get((0, 0)):
        raise NotAGerm(f"{text!r} has nonzero constant term {terms[(0, 0)]}")
    if not terms:
        raise NotAGerm(f"{text!r} is the zero polynomial")
    return GermSpec.from_terms(terms, text)


def format_germ(g: GermSpec) -> str:
    return format_terms(g.as_dict())
