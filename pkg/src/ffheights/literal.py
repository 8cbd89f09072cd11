"""Parser for polynomial literals.

Grammar (whitespace ignored, ``**`` accepted as a synonym for ``^``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

Names are ``t`` and, for forms, ``X0`` .. ``Xk``.  Division is by nonzero
constants only, except in rational-function literals (``t/(t+1)``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .arith import RationalFunc, UniPoly
from .errors import DivisionByZero, ProblemSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise ProblemSyntaxError(f"unexpected character {text[col - 1]!r}", column=col)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            toks.append(("num", m.group(1), col))
        elif m.group(2):
            toks.append(("name", m.group(2), col))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, col))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, col = self.take()
        if kind != "op" or val != op:
            raise ProblemSyntaxError(f"expected {op!r}", column=col)

    def parse(self):
        if self.peek()[0] == "end":
            raise ProblemSyntaxError("empty expression", column=self.peek()[2])
        node = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ProblemSyntaxError(f"unexpected {val!r}", column=col)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, col = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = ("add" if val == "+" else "sub", node, self.term(), col)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val, col = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                node = ("mul" if val == "*" else "div", node, self.unary(), col)
            else:
                return node

    def unary(self):
        kind, val, col = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return inner if val == "+" else ("neg", inner, col)
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, col = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, c2 = self.take()
            if k2 != "num":
                raise ProblemSyntaxError("exponent must be a nonnegative integer", column=c2)
            return ("pow", base, int(v2), col)
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return ("num", Fraction(int(val)), col)
        if kind == "name":
            return ("var", val, col)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "end":
            raise ProblemSyntaxError("unexpected end of expression", column=col)
        raise ProblemSyntaxError(f"unexpected {val!r}", column=col)


# sparse multivariate polynomials: {exponent tuple: Fraction}

def _mp_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _eval_mpoly(node, names: Sequence[str]) -> dict:
    nvars = len(names)
    zero = (0,) * nvars
    tag = node[0]
    if tag == "num":
        return {zero: node[1]} if node[1] else {}
    if tag == "var":
        if node[1] not in names:
            raise ProblemSyntaxError(f"unknown variable {node[1]!r}", column=node[2])
        e = [0] * nvars
        e[names.index(node[1])] = 1
        return {tuple(e): Fraction(1)}
    if tag == "neg":
        return {e: -c for e, c in _eval_mpoly(node[1], names).items()}
    if tag == "pow":
        base = _eval_mpoly(node[1], names)
        out = {zero: Fraction(1)}
        for _ in range(node[2]):
            out = _mp_mul(out, base)
        return out
    a = _eval_mpoly(node[1], names)
    b = _eval_mpoly(node[2], names)
    if tag == "add":
        return _mp_add(a, b)
    if tag == "sub":
        return _mp_add(a, b, -1)
    if tag == "mul":
        return _mp_mul(a, b)
    if tag == "div":
        if any(e != zero for e in b):
            raise ProblemSyntaxError("division by a non-constant expression", column=node[3])
        c = b.get(zero, 0)
        if not c:
            raise DivisionByZero("division by zero", column=node[3])
        return {e: v / c for e, v in a.items()}
    raise AssertionError(tag)


def _eval_rf(node) -> RationalFunc:
    tag = node[0]
    if tag == "num":
        return RationalFunc(UniPoly([node[1]]))
    if tag == "var":
        if node[1] != "t":
            raise ProblemSyntaxError(f"unknown variable {node[1]!r}", column=node[2])
        return RationalFunc(UniPoly.t())
    if tag == "neg":
        return -_eval_rf(node[1])
    if tag == "pow":
        return _eval_rf(node[1]) ** node[2]
    a = _eval_rf(node[1])
    b = _eval_rf(node[2])
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        if not b:
            raise DivisionByZero("division by zero", column=node[3])
        return a / b
    raise AssertionError(tag)


def parse_mpoly(text: str, names: Sequence[str]) -> dict:
    """Parse into {exponent tuple over ``names``: Fraction}."""
    return _eval_mpoly(_Parser(text).parse(), tuple(names))


def parse_unipoly(text: str) -> UniPoly:
    terms = parse_mpoly(text, ("t",))
    if not terms:
        return UniPoly()
    deg = max(e[0] for e in terms)
    return UniPoly([terms.get((i,), 0) for i in range(deg + 1)])


def parse_rational_function(text: str) -> RationalFunc:
    return _eval_rf(_Parser(text).parse())


def parse_form_terms(text: str, k: int) -> dict[tuple[int, ...], UniPoly]:
    """Parse a form in X0..Xk with coefficients in Q[t]; homogeneity is not checked here."""
    names = ("t",) + tuple(f"X{i}" for i in range(k + 1))
    terms = parse_mpoly(text, names)
    grouped: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for e, c in terms.items():
        grouped.setdefault(e[1:], {})[e[0]] = c
    out = {}
    for mono, coeffs in grouped.items():
        deg = max(coeffs)
        out[mono] = UniPoly([coeffs.get(i, 0) for i in range(deg + 1)])
    return out
