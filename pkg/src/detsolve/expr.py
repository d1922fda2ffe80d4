"""Polynomial expressions: tokenizer, recursive-descent parser, printer.

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := '-' unary | power
    power := atom ('^' INT)?
    atom  := INT | NAME | '(' expr ')'

Nodes are tuples: ("num", c), ("var", i), ("neg", a), ("pow", a, k) and
("add" | "sub" | "mul", a, b).
"""
from __future__ import annotations

import re

from .errors import ParseError
from .slp import SlpBuilder

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text, line=None, col0=1):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        col = col0 + m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2):
            tokens.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append((ch, ch, col))
        pos = m.end()
    tokens.append(("end", None, col0 + len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables, line=None, col0=1):
        self.toks = tokenize(text, line, col0)
        self.i = 0
        self.vars = {name: k for k, name in enumerate(variables)}
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of expression" if kind == "end" else repr(kind)
            found = "end of expression" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {found}", self.line, tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "*":
            self.take()
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", self.line, tok[2])
            node = ("pow", node, tok[1])
        return node

    def atom(self):
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            return ("num", tok[1])
        if kind == "name":
            if tok[1] not in self.vars:
                raise ParseError(f"unknown variable {tok[1]!r}", self.line, tok[2])
            return ("var", self.vars[tok[1]])
        if kind == "(":
            node = self.expr()
            self.take(")")
            return node
        what = "end of expression" if kind == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", self.line, tok[2])


def parse_expr(text, variables, line=None, col0=1):
    parser = _Parser(text, variables, line, col0)
    if parser.peek()[0] == "end":
        raise ParseError("empty expression", line, col0)
    node = parser.expr()
    parser.take("end")
    return node


_PREC = {"add": 1, "sub": 1, "mul": 2, "neg": 3, "pow": 4, "num": 5, "var": 5}
_SYM = {"add": " + ", "sub": " - ", "mul": "*"}


def to_text(node, variables) -> str:
    kind = node[0]
    if kind == "num":
        return str(node[1])
    if kind == "var":
        return variables[node[1]]
    if kind == "neg":
        inner = to_text(node[1], variables)
        return "-" + (f"({inner})" if _PREC[node[1][0]] <= 3 else inner)
    if kind == "pow":
        inner = to_text(node[1], variables)
        if _PREC[node[1][0]] < 5:
            inner = f"({inner})"
        return f"{inner}^{node[2]}"
    prec = _PREC[kind]
    left = to_text(node[1], variables)
    right = to_text(node[2], variables)
    if _PREC[node[1][0]] < prec:
        left = f"({left})"
    if _PREC[node[2][0]] <= prec:
        right = f"({right})"
    return left + _SYM[kind] + right


def degree(node) -> int:
    """Syntactic degree bound (sum for products, max for sums)."""
    kind = node[0]
    if kind == "num":
        return 0
    if kind == "var":
        return 1
    if kind == "neg":
        return degree(node[1])
    if kind == "pow":
        return degree(node[1]) * node[2]
    if kind == "mul":
        return degree(node[1]) + degree(node[2])
    return max(degree(node[1]), degree(node[2]))


def emit(builder: SlpBuilder, node, xs):
    """Append the instructions computing ``node`` and return its slot."""
    kind = node[0]
    if kind == "num":
        return builder.const(node[1])
    if kind == "var":
        return xs[node[1]]
    if kind == "neg":
        return builder.neg(emit(builder, node[1], xs))
    if kind == "pow":
        return builder.pow(emit(builder, node[1], xs), node[2])
    a = emit(builder, node[1], xs)
    b = emit(builder, node[2], xs)
    return {"add": builder.add, "sub": builder.sub, "mul": builder.mul}[kind](a, b)


def compile_exprs(nodes, n):
    b = SlpBuilder(n)
    xs = [b.input(i) for i in range(n)]
    return b.build([emit(b, node, xs) for node in nodes])
