"""Scalar expressions of chart coordinates: parsing, printing, exact jets.

Grammar (lowest to highest precedence)::

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := number | name | name '(' sum ')' | '(' sum ')'

``^`` is right-associative and binds tighter than unary minus, so ``-t^2``
is ``-(t^2)``.  Recognised functions are sin, cos, exp, log and sqrt; the
name ``pi`` is a constant unless the chart declares it as a coordinate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import DomainError, EmptyExpression, SyntaxError, UnknownSymbol
from .jets import Jet

__all__ = [
    "Expr", "Num", "Sym", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "Jet2", "parse_expr", "eval_jet2", "to_text", "symbols", "diff",
    "compile_jet", "FUNCTIONS",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")


class Expr:
    """Base class of the immutable syntax tree."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Num(Expr):
    value: float


@dataclass(frozen=True, slots=True)
class Sym(Expr):
    name: str


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exp: Expr


@dataclass(frozen=True, slots=True)
class Call(Expr):
    func: str
    arg: Expr


# parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise SyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: frozenset[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        kind, val, pos = self.take()
        if val != op or kind != "op":
            raise SyntaxError(f"expected {op!r}", pos)

    def parse(self) -> Expr:
        e = self.sum()
        kind, val, pos = self.peek()
        if kind != "end":
            raise SyntaxError(f"unexpected {val!r}", pos)
        return e

    def sum(self) -> Expr:
        e = self.product()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.product()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def product(self) -> Expr:
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return Pow(base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if self.peek()[:2] == ("op", "("):
                if val not in FUNCTIONS:
                    raise UnknownSymbol(val)
                self.take()
                arg = self.sum()
                self.expect(")")
                return Call(val, arg)
            if val in self.names:
                return Sym(val)
            if val == "pi":
                return Num(math.pi)
            raise UnknownSymbol(val)
        if (kind, val) == ("op", "("):
            e = self.sum()
            self.expect(")")
            return e
        if kind == "end":
            raise SyntaxError("unexpected end of input", pos)
        raise SyntaxError(f"unexpected {val!r}", pos)


def _names(chart) -> frozenset[str]:
    if hasattr(chart, "coord_names"):
        return frozenset(chart.coord_names)
    return frozenset(chart)


def parse_expr(text: str, chart) -> Expr:
    """Parse ``text`` against the coordinate names of ``chart``.

    ``chart`` is a ``Chart`` or any iterable of coordinate names.
    """
    if text is None or not str(text).strip():
        raise EmptyExpression("empty expression")
    return _Parser(str(text), _names(chart)).parse()


# printing -----------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _prec(e: Expr) -> int:
    if isinstance(e, Num) and e.value < 0:
        return 0
    return _PREC.get(type(e), 5)


def _wrap(e: Expr, need: int) -> str:
    s = to_text(e)
    return f"({s})" if _prec(e) < need else s


def _num_text(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def to_text(e: Expr) -> str:
    """Render ``e`` in the input grammar; parsing the result gives ``e`` back."""
    if isinstance(e, Num):
        return _num_text(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(e.left, 1) + op + _wrap(e.right, 2)
    if isinstance(e, (Mul, Div)):
        op = " * " if isinstance(e, Mul) else " / "
        return _wrap(e.left, 2) + op + _wrap(e.right, 3)
    if isinstance(e, Pow):
        return _wrap(e.base, 5) + "^" + _wrap(e.exp, 3)
    if isinstance(e, Call):
        return f"{e.func}({to_text(e.arg)})"
    raise TypeError(f"not an expression: {e!r}")


def symbols(e: Expr) -> frozenset[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Sym):
            out.add(node.name)
        elif isinstance(node, (Neg, Call)):
            stack.append(node.arg)
        elif isinstance(node, Pow):
            stack.extend((node.base, node.exp))
        elif not isinstance(node, Num):
            stack.extend((node.left, node.right))
    return frozenset(out)


# jets ---------------------------------------------------------------------


@dataclass(frozen=True)
class Jet2:
    value: float
    grad: np.ndarray
    hess: np.ndarray


def _const_value(e: Expr) -> float | None:
    """Value of a symbol-free subtree, else None."""
    if symbols(e):
        return None
    return float(compile_jet(e, {})(np.zeros(0)).val)


def _power_rule(u: Jet, c: float) -> Jet:
    x = u.val
    if c == int(c):
        k = int(c)
        if k < 0 and np.any(x == 0.0):
            raise DomainError("division by zero in negative power")
        if k == 0:
            return u.chain(np.ones_like(x), np.zeros_like(x), np.zeros_like(x))
        f2 = k * (k - 1) * x ** (k - 2) if k not in (0, 1) else np.zeros_like(x)
        return u.chain(x ** k, k * x ** (k - 1), f2)
    if np.any(x <= 0.0):
        raise DomainError(f"non-integer power {c!r} of nonpositive base {float(np.min(x))!r}")
    return u.chain(x ** c, c * x ** (c - 1), c * (c - 1) * x ** (c - 2))


def _log(u: Jet) -> Jet:
    if np.any(u.val <= 0.0):
        raise DomainError(f"log of nonpositive value {float(np.min(u.val))!r}")
    r = 1.0 / u.val
    return u.chain(np.log(u.val), r, -r * r)


def _sqrt(u: Jet) -> Jet:
    if np.any(u.val <= 0.0):
        raise DomainError(f"sqrt of nonpositive value {float(np.min(u.val))!r}")
    s = np.sqrt(u.val)
    return u.chain(s, 0.5 / s, -0.25 / (s * u.val))


def _exp(u: Jet) -> Jet:
    v = np.exp(u.val)
    return u.chain(v, v, v)


def _sin(u: Jet) -> Jet:
    s, c = np.sin(u.val), np.cos(u.val)
    return u.chain(s, c, -s)


def _cos(u: Jet) -> Jet:
    s, c = np.sin(u.val), np.cos(u.val)
    return u.chain(c, -s, -c)


_CALLS: dict[str, Callable[[Jet], Jet]] = {
    "sin": _sin, "cos": _cos, "exp": _exp, "log": _log, "sqrt": _sqrt,
}

Evaluator = Callable[[np.ndarray], Jet]


def compile_jet(e: Expr, index: Mapping[str, int]) -> Evaluator:
    """Compile ``e`` into a function mapping a coordinate vector to its jet.

    ``index`` maps coordinate names to positions in the vector.
    """
    n = len(index)
    zero_g = np.zeros(n)
    zero_h = np.zeros((n, n))

    def build(node: Expr) -> Evaluator:
        if isinstance(node, Num):
            v = float(node.value)
            return lambda x: Jet(v, zero_g, zero_h)
        if isinstance(node, Sym):
            try:
                i = index[node.name]
            except KeyError:
                raise UnknownSymbol(node.name) from None
            g = np.zeros(n)
            g[i] = 1.0
            return lambda x: Jet(x[i], g, zero_h)
        if isinstance(node, Neg):
            a = build(node.arg)
            return lambda x: -a(x)
        if isinstance(node, Call):
            a = build(node.arg)
            fn = _CALLS[node.func]
            return lambda x: fn(a(x))
        if isinstance(node, Pow):
            a = build(node.base)
            c = _const_value(node.exp)
            if c is not None:
                return lambda x: _power_rule(a(x), c)
            b = build(node.exp)
            return lambda x: _exp(b(x) * _log(a(x)))
        a, b = build(node.left), build(node.right)
        if isinstance(node, Add):
            return lambda x: a(x) + b(x)
        if isinstance(node, Sub):
            return lambda x: a(x) - b(x)
        if isinstance(node, Mul):
            return lambda x: a(x) * b(x)
        if isinstance(node, Div):
            def div(x):
                den = b(x)
                if den.val == 0.0:
                    raise DomainError("division by zero")
                return a(x) * den.reciprocal()
            return div
        raise TypeError(f"not an expression: {node!r}")

    return build(e)


def eval_jet2(e: Expr, p: Union[Mapping[str, float], Sequence[float]], chart=None) -> Jet2:
    """Value, gradient and Hessian of ``e`` at ``p``.

    ``p`` is a mapping from coordinate names to values (its order fixes the
    derivative axes), or a sequence aligned with ``chart.coord_names``.
    """
    if isinstance(p, Mapping):
        names = list(p)
        x = np.array([float(p[k]) for k in names])
    else:
        if chart is None:
            raise ValueError("a positional point needs a chart")
        names = list(chart.coord_names)
        x = np.asarray(p, dtype=float)
    for s in symbols(e):
        if s not in names:
            raise UnknownSymbol(s)
    jet = compile_jet(e, {k: i for i, k in enumerate(names)})(x)
    if not np.isfinite(jet.val):
        raise DomainError(f"non-finite value at {dict(zip(names, x.tolist()))}")
    hess = 0.5 * (jet.hess + jet.hess.T)
    return Jet2(float(jet.val), np.array(jet.grad, dtype=float), hess)


# construction helpers -----------------------------------------------------

def _is_num(e: Expr, v: float) -> bool:
    return isinstance(e, Num) and e.value == v


def add(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return Num(0.0)
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0):
        return Num(0.0)
    if _is_num(b, 1.0):
        return a
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def sum_exprs(terms: Iterable[Expr]) -> Expr:
    out: Expr = Num(0.0)
    for t in terms:
        out = add(out, t)
    return out


def diff(e: Expr, name: str) -> Expr:
    """Symbolic partial derivative with zero/one folding only."""
    if isinstance(e, Num):
        return Num(0.0)
    if isinstance(e, Sym):
        return Num(1.0 if e.name == name else 0.0)
    if name not in symbols(e):
        return Num(0.0)
    if isinstance(e, Neg):
        return neg(diff(e.arg, name))
    if isinstance(e, Add):
        return add(diff(e.left, name), diff(e.right, name))
    if isinstance(e, Sub):
        return sub(diff(e.left, name), diff(e.right, name))
    if isinstance(e, Mul):
        return add(mul(diff(e.left, name), e.right), mul(e.left, diff(e.right, name)))
    if isinstance(e, Div):
        num = sub(mul(diff(e.left, name), e.right), mul(e.left, diff(e.right, name)))
        return div(num, Pow(e.right, Num(2.0)))
    if isinstance(e, Pow):
        if name not in symbols(e.exp):
            c = e.exp
            lower = Pow(e.base, sub(c, Num(1.0))) if not isinstance(c, Num) else (
                e.base if c.value == 2.0 else Pow(e.base, Num(c.value - 1.0)))
            return mul(mul(c, lower), diff(e.base, name))
        # d(a^b) = a^b * (b' log a + b a'/a)
        inner = add(mul(diff(e.exp, name), Call("log", e.base)),
                    mul(e.exp, div(diff(e.base, name), e.base)))
        return mul(e, inner)
    if isinstance(e, Call):
        a = e.arg
        da = diff(a, name)
        outer = {
            "sin": lambda: Call("cos", a),
            "cos": lambda: neg(Call("sin", a)),
            "exp": lambda: e,
            "log": lambda: div(Num(1.0), a),
            "sqrt": lambda: div(Num(0.5), e),
        }[e.func]()
        return mul(outer, da)
    raise TypeError(f"not an expression: {e!r}")
