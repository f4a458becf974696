"""Recursive-descent parser for radial potential expressions.

Grammar (``^`` binds tighter than unary minus and is right-associative)::

    expr   := term (("+"|"-") term)*
    term   := unary (("*"|"/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?
    atom   := NUMBER | "pi" | "y" | "ycoth" | FUNC atom | "(" expr ")"
    FUNC   := sinh | cosh | tanh | coth | exp | log | sqrt

``ycoth`` is the removable-singularity primitive y*coth(y).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import ProfileSyntaxError, UnknownIdentifier
from ..numerics.jet import Jet4, compose, jcosh, jcoth, jexp, jlog, jpow, jsinh, jsqrt, jtanh
from ..numerics.special import ycoth_derivatives

FUNCTIONS = ("sinh", "cosh", "tanh", "coth", "exp", "log", "sqrt")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class YCoth:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Pi, Var, YCoth, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ProfileSyntaxError(f"unexpected character {text[offset]!r}", _byte_offset(text, offset))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), _byte_offset(text, m.start(kind))))
        pos = m.end()
    tokens.append(("end", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, off = self.take()
        if text != value or kind != "op":
            raise ProfileSyntaxError(f"expected {value!r}, found {text or 'end of input'!r}", off)

    def parse(self) -> Expr:
        node = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ProfileSyntaxError(f"unexpected {text!r}", off)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, text, off = self.take()
        if kind == "num":
            return Num(float(text))
        if kind == "name":
            if text == "pi":
                return Pi()
            if text == "y":
                return Var()
            if text == "ycoth":
                return YCoth()
            if text in FUNCTIONS:
                return Call(text, self.atom())
            raise UnknownIdentifier(f"unknown identifier {text!r}", off)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ProfileSyntaxError(f"unexpected {text or 'end of input'!r}", off)


def parse_profile(text: str) -> Expr:
    """Parse a profile expression into its syntax tree."""
    if not text or not text.strip():
        raise ProfileSyntaxError("empty expression", 0)
    return _Parser(text).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def to_text(node: Expr) -> str:
    """Canonical text form; ``parse_profile(to_text(e)) == e``."""
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Var):
        return "y"
    if isinstance(node, YCoth):
        return "ycoth"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        if node.op == "^":
            # atom on the left, unary on the right
            return f"{_wrap(node.left, 5)}^{_wrap(node.right, 3)}"
        return f"{_wrap(node.left, p)} {node.op} {_wrap(node.right, p + 1)}"
    raise TypeError(f"not an expression node: {node!r}")


def _level(node: Expr) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    return 5


def _wrap(node: Expr, min_level: int) -> str:
    s = to_text(node)
    return s if _level(node) >= min_level else f"({s})"


def depends_on_y(node: Expr) -> bool:
    if isinstance(node, (Var, YCoth)):
        return True
    if isinstance(node, Neg):
        return depends_on_y(node.operand)
    if isinstance(node, Call):
        return depends_on_y(node.arg)
    if isinstance(node, BinOp):
        return depends_on_y(node.left) or depends_on_y(node.right)
    return False


_FLOAT_FUNCS = {
    "sinh": np.sinh,
    "cosh": np.cosh,
    "tanh": np.tanh,
    "coth": lambda v: 1.0 / np.tanh(v),
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
}
_JET_FUNCS = {
    "sinh": jsinh,
    "cosh": jcosh,
    "tanh": jtanh,
    "coth": jcoth,
    "exp": jexp,
    "log": jlog,
    "sqrt": jsqrt,
}


def evaluate(node: Expr, y):
    """Evaluate at ``y`` (float, array or :class:`Jet4`); constant subtrees stay plain numbers."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Pi):
        return math.pi
    if isinstance(node, Var):
        return y
    if isinstance(node, YCoth):
        if isinstance(y, Jet4):
            return compose(y, ycoth_derivatives(y.value))
        return ycoth_derivatives(y)[0]
    if isinstance(node, Neg):
        return -evaluate(node.operand, y)
    if isinstance(node, Call):
        arg = evaluate(node.arg, y)
        if isinstance(arg, Jet4):
            return _JET_FUNCS[node.func](arg)
        return _FLOAT_FUNCS[node.func](arg)
    if isinstance(node, BinOp):
        left = evaluate(node.left, y)
        right = evaluate(node.right, y)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return left / right
        if isinstance(left, Jet4):
            if isinstance(right, Jet4):
                return left**right
            return jpow(left, float(right))
        if isinstance(right, Jet4):
            return jexp(right * math.log(left))
        return np.power(left, right)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_constant(text: str) -> float:
    """Evaluate a y-free expression such as ``pi/200``."""
    node = parse_profile(text)
    if depends_on_y(node):
        raise ProfileSyntaxError("constant expression must not depend on y", 0)
    return float(evaluate(node, 0.0))
