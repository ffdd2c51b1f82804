"""Integrand expressions in one variable, with Taylor-mode differentiation.

Grammar (full EBNF in docs/expression-grammar.md):

    expression := term (("+" | "-") term)*
    term       := factor (("*" | "/") factor)*
    factor     := "-" factor | power
    power      := atom ("^" factor)?
    atom       := NUMBER | "pi" | "x" | NAME "(" expression ")" | "(" expression ")"

NAME is one of sin, cos, exp, log, sqrt.  "^" is right-associative and
binds tighter than unary minus.  Whitespace is ignored.

Differentiation works on truncated Taylor series: a jet of order m at x0
holds the coefficients t_0..t_m of the expansion there, and derivatives
come back as f^(k)(x0) = k! * t_k.  Keeping scaled coefficients rather
than raw derivatives avoids factorial blow-up at high order; the k!
factor appears only at the API boundary.  Integer powers use binary
exponentiation on jets; other constant (or non-constant) exponents go
through exp(e * log(base)), restricted to positive bases.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Expr",
    "ParseError",
    "EvalDomainError",
    "TaylorJet",
    "MAX_JET_ORDER",
    "parse",
    "jet_eval",
    "jet_provider",
    "evaluator",
    "derivative_function",
]

#: Hard cap on the jet order; the recurrences are O(m^2) and nothing in the
#: quadrature engine needs more.
MAX_JET_ORDER = 128

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")


class ParseError(ValueError):
    """Syntax error with a 0-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class EvalDomainError(ValueError):
    """Evaluation left a function's domain; names the offending subexpression."""

    def __init__(self, message: str, subexpr: "Expr"):
        super().__init__(f"{message} in '{subexpr.unparse()}'")
        self.subexpr = subexpr


# -- syntax tree -------------------------------------------------------


class Expr:
    __slots__ = ()

    def unparse(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.unparse()!r})"


@dataclass(frozen=True, repr=False)
class Num(Expr):
    value: Fraction

    def unparse(self):
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return str(float(self.value))


@dataclass(frozen=True, repr=False)
class Pi(Expr):
    def unparse(self):
        return "pi"


@dataclass(frozen=True, repr=False)
class Var(Expr):
    def unparse(self):
        return "x"


@dataclass(frozen=True, repr=False)
class Neg(Expr):
    arg: Expr

    def unparse(self):
        return f"-{self.arg.unparse()}"


@dataclass(frozen=True, repr=False)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def unparse(self):
        return f"({self.left.unparse()} {self.op} {self.right.unparse()})"


@dataclass(frozen=True, repr=False)
class Call(Expr):
    name: str
    arg: Expr

    def unparse(self):
        return f"{self.name}({self.arg.unparse()})"


# -- tokenizer / parser ------------------------------------------------

_NUMBER = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

_ATOM_HINT = "a number, 'x', 'pi', a function call, or '('"


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(_Token("num", m.group(), i))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(_Token("name", m.group(), i))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def match_op(self, *ops) -> _Token | None:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ops:
            return self.advance()
        return None

    def expression(self) -> Expr:
        node = self.term()
        while (tok := self.match_op("+", "-")) is not None:
            node = BinOp(tok.text, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while (tok := self.match_op("*", "/")) is not None:
            node = BinOp(tok.text, node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.match_op("-"):
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.match_op("^"):
            return BinOp("^", base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num(Fraction(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text == "x":
                return Var()
            if tok.text == "pi":
                return Pi()
            if tok.text in FUNCTIONS:
                if not self.match_op("("):
                    raise ParseError(
                        f"expected '(' after function {tok.text!r}", self.peek().pos
                    )
                arg = self.expression()
                if not self.match_op(")"):
                    raise ParseError("expected ')'", self.peek().pos)
                return Call(tok.text, arg)
            raise ParseError(
                f"unknown identifier {tok.text!r}; expected x, pi, or one of "
                + ", ".join(FUNCTIONS),
                tok.pos,
            )
        if self.match_op("("):
            node = self.expression()
            if not self.match_op(")"):
                raise ParseError("expected ')'", self.peek().pos)
            return node
        raise ParseError(f"expected {_ATOM_HINT}", tok.pos)


def parse(text: str) -> Expr:
    """Parse an expression in the variable x.  Raises :class:`ParseError`."""
    parser = _Parser(_tokenize(text))
    node = parser.expression()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(f"unexpected trailing input {trailing.text!r}", trailing.pos)
    return node


# -- jets ---------------------------------------------------------------


@dataclass(frozen=True)
class TaylorJet:
    """Truncated Taylor coefficients t_0..t_m of an integrand at a point."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return self.coeffs[0]

    def derivative(self, k: int) -> float:
        """f^(k) at the expansion point, i.e. k! * t_k."""
        if not 0 <= k <= self.order:
            raise ValueError(f"jet of order {self.order} has no derivative {k}")
        return math.factorial(k) * self.coeffs[k]

    def derivatives(self) -> tuple:
        """(f, f', ..., f^(m)) at the expansion point."""
        return tuple(math.factorial(k) * t for k, t in enumerate(self.coeffs))


def _mul(u, v):
    m = len(u)
    return [sum(u[j] * v[k - j] for j in range(k + 1)) for k in range(m)]


def _div(u, v, node):
    if v[0] == 0.0:
        raise EvalDomainError("division by zero", node)
    m = len(u)
    out = [0.0] * m
    out[0] = u[0] / v[0]
    for k in range(1, m):
        acc = u[k]
        for j in range(k):
            acc -= out[j] * v[k - j]
        out[k] = acc / v[0]
    return out


def _exp(u):
    m = len(u)
    out = [0.0] * m
    out[0] = math.exp(u[0])
    for k in range(1, m):
        acc = 0.0
        for j in range(1, k + 1):
            acc += j * u[j] * out[k - j]
        out[k] = acc / k
    return out


def _log(u, node):
    if u[0] <= 0.0:
        raise EvalDomainError("log of a non-positive value", node)
    m = len(u)
    out = [0.0] * m
    out[0] = math.log(u[0])
    for k in range(1, m):
        acc = 0.0
        for j in range(1, k):
            acc += j * out[j] * u[k - j]
        out[k] = (u[k] - acc / k) / u[0]
    return out


def _sqrt(u, node):
    if u[0] <= 0.0:
        raise EvalDomainError("sqrt of a non-positive value", node)
    m = len(u)
    out = [0.0] * m
    out[0] = math.sqrt(u[0])
    for k in range(1, m):
        acc = u[k]
        for j in range(1, k):
            acc -= out[j] * out[k - j]
        out[k] = acc / (2.0 * out[0])
    return out


def _sin_cos(u):
    m = len(u)
    s = [0.0] * m
    c = [0.0] * m
    s[0] = math.sin(u[0])
    c[0] = math.cos(u[0])
    for k in range(1, m):
        sa = 0.0
        ca = 0.0
        for j in range(1, k + 1):
            sa += j * u[j] * c[k - j]
            ca += j * u[j] * s[k - j]
        s[k] = sa / k
        c[k] = -ca / k
    return s, c


#: Integer exponents beyond this are treated as evaluation errors rather
#: than ground through binary exponentiation.
_MAX_INT_EXPONENT = 1 << 20


def _powi(u, exponent, node):
    if abs(exponent) > _MAX_INT_EXPONENT:
        raise EvalDomainError(f"integer exponent {exponent} is too large", node)
    m = len(u)
    one = [0.0] * m
    one[0] = 1.0
    if exponent == 0:
        return one
    e = abs(exponent)
    result = one
    base = list(u)
    while e:
        if e & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        e >>= 1
    if exponent < 0:
        result = _div(one, result, node)
    return result


def constant_value(node: Expr):
    """Fold a constant subtree to a Fraction (exact) or float; None if it has x."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Pi):
        return math.pi
    if isinstance(node, Var):
        return None
    if isinstance(node, Neg):
        v = constant_value(node.arg)
        return None if v is None else -v
    if isinstance(node, BinOp):
        left = constant_value(node.left)
        right = constant_value(node.right)
        if left is None or right is None:
            return None
        try:
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if node.op == "/":
                return left / right
            if node.op == "^":
                if isinstance(right, Fraction) and right.denominator == 1:
                    if abs(right.numerator) > _MAX_INT_EXPONENT:
                        return None
                    return left ** right.numerator
                return float(left) ** float(right)
        except (ZeroDivisionError, OverflowError, ValueError):
            return None
    if isinstance(node, Call):
        v = constant_value(node.arg)
        if v is None:
            return None
        try:
            return getattr(math, node.name)(float(v))
        except ValueError:
            return None
    return None


def _jet(node: Expr, x0: float, m: int) -> list:
    if isinstance(node, Num):
        out = [0.0] * (m + 1)
        out[0] = float(node.value)
        return out
    if isinstance(node, Pi):
        out = [0.0] * (m + 1)
        out[0] = math.pi
        return out
    if isinstance(node, Var):
        out = [0.0] * (m + 1)
        out[0] = x0
        if m >= 1:
            out[1] = 1.0
        return out
    if isinstance(node, Neg):
        return [-t for t in _jet(node.arg, x0, m)]
    if isinstance(node, BinOp):
        if node.op == "^":
            exponent = constant_value(node.right)
            base = _jet(node.left, x0, m)
            if isinstance(exponent, Fraction) and exponent.denominator == 1:
                return _powi(base, exponent.numerator, node)
            if exponent is not None:
                if base[0] <= 0.0:
                    raise EvalDomainError(
                        "non-integer power of a non-positive base", node
                    )
                return _exp([float(exponent) * t for t in _log(base, node)])
            # Non-constant exponent: rewrite as exp(e * log(base)).
            exp_jet = _jet(node.right, x0, m)
            if base[0] <= 0.0:
                raise EvalDomainError("power of a non-positive base", node)
            return _exp(_mul(exp_jet, _log(base, node)))
        left = _jet(node.left, x0, m)
        right = _jet(node.right, x0, m)
        if node.op == "+":
            return [p + q for p, q in zip(left, right)]
        if node.op == "-":
            return [p - q for p, q in zip(left, right)]
        if node.op == "*":
            return _mul(left, right)
        if node.op == "/":
            return _div(left, right, node)
        raise AssertionError(f"unhandled operator {node.op!r}")
    if isinstance(node, Call):
        arg = _jet(node.arg, x0, m)
        if node.name == "exp":
            return _exp(arg)
        if node.name == "log":
            return _log(arg, node)
        if node.name == "sqrt":
            return _sqrt(arg, node)
        if node.name == "sin":
            return _sin_cos(arg)[0]
        if node.name == "cos":
            return _sin_cos(arg)[1]
        raise AssertionError(f"unhandled function {node.name!r}")
    raise TypeError(f"not an expression node: {node!r}")


def jet_eval(expr: Expr, x0, m: int) -> TaylorJet:
    """Taylor coefficients of ``expr`` at x0 up to order m."""
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"jet order must be a nonnegative integer, got {m!r}")
    if m > MAX_JET_ORDER:
        raise ValueError(f"jet order {m} exceeds the cap {MAX_JET_ORDER}")
    return TaylorJet(tuple(_jet(expr, float(x0), m)))


def jet_provider(expr: Expr):
    """Adapter for the quadrature engine: (x, m) -> derivatives 0..m at x."""

    def jets(x, m):
        return jet_eval(expr, x, m).derivatives()

    return jets


def evaluator(expr: Expr):
    """Plain float evaluation, x -> f(x)."""

    def value(x):
        return _jet(expr, float(x), 0)[0]

    return value


def derivative_function(expr: Expr, k: int):
    """The k-th derivative as a callable, x -> f^(k)(x)."""
    if k < 0 or k > MAX_JET_ORDER:
        raise ValueError(f"derivative order must be in 0..{MAX_JET_ORDER}")

    def value(x):
        return jet_eval(expr, x, k).derivative(k)

    return value
