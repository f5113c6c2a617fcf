"""Expression language shared by the CLI: tokenizer, parser and interpreter.

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" NAT)?
    atom    := NAT ("/" NAT)? | NAME | NAME "(" args ")" | "(" expr ")"

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.  Binary
operators are parsed by precedence climbing.  The function forms are
``exp``, ``sin``, ``cos``, ``geom`` (one argument each), ``invert(e)``,
``deriv(e, var, order)`` and ``truncate(e, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .completion import truncate
from .errors import KernelError, UnknownVariable
from .monoid_ring import MonoidRingElement
from .polynomial import PolynomialRing
from .polynomial import derivative as poly_derivative
from .rings import Ring
from .series import PowerSeries, from_polynomial, invert, named_series

SERIES_FUNCTIONS = {"exp": "exp", "sin": "sin", "cos": "cos", "geom": "geom_minus"}
FUNCTIONS = {**{name: 1 for name in SERIES_FUNCTIONS}, "invert": 1, "deriv": 3, "truncate": 2}
BINARY_PRECEDENCE = {"+": 1, "-": 1, "*": 2}


class ExpressionSyntaxError(ValueError):
    """Parse failure at a 0-based character ``position``."""

    def __init__(self, position: int, expected: list[str], found: str, source: str = ""):
        self.position = position
        self.expected = sorted(set(expected))
        self.found = found
        self.source = source
        super().__init__(
            f"syntax error at position {position}: expected {' or '.join(self.expected)}, found {found}")

    def caret(self) -> str:
        return f"  {self.source}\n  {' ' * self.position}^"


# -- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Named:
    kind: str
    arg: "Expr"


@dataclass(frozen=True)
class Invert:
    operand: "Expr"


@dataclass(frozen=True)
class Deriv:
    operand: "Expr"
    var: str
    order: int


@dataclass(frozen=True)
class Truncate:
    operand: "Expr"
    order: int


Expr = Union[Num, Var, Neg, BinOp, Pow, Named, Invert, Deriv, Truncate]


# -- tokens ---------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # "nat", "name", "op", "end"
    text: str
    pos: int

    def describe(self) -> str:
        if self.kind == "end":
            return "end of input"
        return repr(self.text)


def tokenize(source: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(source):
        c = source[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(source) and source[j].isdigit():
                j += 1
            tokens.append(Token("nat", source[i:j], i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(source) and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("name", source[i:j], i))
            i = j
        elif c in "+-*^()/,":
            tokens.append(Token("op", c, i))
            i += 1
        else:
            raise ExpressionSyntaxError(i, ["a number", "a name", "an operator"], repr(c), source)
    tokens.append(Token("end", "", len(source)))
    return tokens


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected: list[str]):
        raise ExpressionSyntaxError(self.tok.pos, expected, self.tok.describe(), self.source)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.fail([repr(text)])

    def nat(self) -> int:
        if self.tok.kind != "nat":
            self.fail(["a natural number"])
        value = int(self.tok.text)
        self.i += 1
        return value

    def name(self) -> str:
        if self.tok.kind != "name":
            self.fail(["a variable name"])
        text = self.tok.text
        self.i += 1
        return text

    def parse(self) -> Expr:
        tree = self.binary(1)
        if self.tok.kind != "end":
            self.fail(["'+'", "'-'", "'*'", "'^'", "end of input"])
        return tree

    def binary(self, min_prec: int) -> Expr:
        left = self.unary()
        while self.tok.kind == "op" and BINARY_PRECEDENCE.get(self.tok.text, 0) >= min_prec:
            op = self.tok.text
            self.i += 1
            right = self.binary(BINARY_PRECEDENCE[op] + 1)
            left = BinOp(op, left, right)
        return left

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            return Pow(base, self.nat())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "nat":
            self.i += 1
            num = int(tok.text)
            if self.accept("/"):
                den_tok = self.tok
                den = self.nat()
                if den == 0:
                    raise ExpressionSyntaxError(den_tok.pos, ["a nonzero denominator"], "'0'", self.source)
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if tok.kind == "name":
            self.i += 1
            if tok.text in FUNCTIONS and self.accept("("):
                return self.call(tok.text)
            return Var(tok.text)
        if self.accept("("):
            inner = self.binary(1)
            self.expect(")")
            return inner
        self.fail(["a number", "a variable name", "'('", "'-'"])

    def call(self, fn: str) -> Expr:
        operand = self.binary(1)
        if fn in SERIES_FUNCTIONS:
            self.expect(")")
            return Named(fn, operand)
        if fn == "invert":
            self.expect(")")
            return Invert(operand)
        self.expect(",")
        if fn == "truncate":
            order = self.nat()
            self.expect(")")
            return Truncate(operand, order)
        var = self.name()
        self.expect(",")
        order = self.nat()
        self.expect(")")
        return Deriv(operand, var, order)


def parse(source: str) -> Expr:
    return Parser(source).parse()


def unparse(e: Expr) -> str:
    """Fully parenthesized source text that parses back to ``e``."""
    if isinstance(e, Num):
        q = e.value
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{unparse(e.operand)})"
    if isinstance(e, BinOp):
        return f"({unparse(e.left)} {e.op} {unparse(e.right)})"
    if isinstance(e, Pow):
        return f"({unparse(e.base)})^{e.exponent}"
    if isinstance(e, Named):
        return f"{e.kind}({unparse(e.arg)})"
    if isinstance(e, Invert):
        return f"invert({unparse(e.operand)})"
    if isinstance(e, Deriv):
        return f"deriv({unparse(e.operand)}, {e.var}, {e.order})"
    if isinstance(e, Truncate):
        return f"truncate({unparse(e.operand)}, {e.order})"
    raise TypeError(f"not an expression: {e!r}")


# -- interpretation -------------------------------------------------------

Value = Union[MonoidRingElement, PowerSeries]


class NotALinearArgument(KernelError, ValueError):
    pass


class Interpreter:
    """Evaluates an AST to a polynomial or, once a series appears, a power series.

    In the ``gauss`` ring the name ``I`` denotes the square root of -1.
    With ``strict`` set, only ``declared`` variables may appear.
    """

    def __init__(self, ring: Ring, declared: tuple[str, ...] = (), strict: bool = False):
        self.ring = ring
        self.poly = PolynomialRing(ring)
        self.declared = tuple(declared)
        self.strict = strict

    def check_var(self, name: str) -> None:
        if self.strict and name not in self.declared:
            raise UnknownVariable(f"variable {name} is not declared (declared: {', '.join(self.declared) or 'none'})")

    def run(self, e: Expr) -> Value:
        return getattr(self, f"_{type(e).__name__.lower()}")(e)

    def _num(self, e: Num) -> Value:
        return self.poly.eta(self.ring.from_fraction(e.value))

    def _var(self, e: Var) -> Value:
        if e.name == "I" and self.ring.imaginary_unit is not None:
            return self.poly.eta(self.ring.imaginary_unit)
        self.check_var(e.name)
        return self.poly.variable(e.name)

    def _neg(self, e: Neg) -> Value:
        return -self.run(e.operand)

    def _binop(self, e: BinOp) -> Value:
        a, b = self.run(e.left), self.run(e.right)
        if isinstance(b, PowerSeries) and not isinstance(a, PowerSeries):
            a = from_polynomial(a)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        return a * b

    def _pow(self, e: Pow) -> Value:
        return self.run(e.base) ** e.exponent

    def _named(self, e: Named) -> Value:
        arg = self.run(e.arg)
        kind = SERIES_FUNCTIONS[e.kind]
        if isinstance(arg, MonoidRingElement) and arg.is_zero():
            return named_series(kind, self.ring, "x", self.ring.zero)
        if isinstance(arg, MonoidRingElement) and len(arg) == 1:
            (m, c), = arg.terms()
            if m.total_degree() == 1:
                var = m.variables[0]
                scale = None if self.ring.is_one(c) else c
                return named_series(kind, self.ring, var, scale)
        raise NotALinearArgument(
            f"{e.kind} takes a constant multiple of one variable; series composition is not supported")

    def _invert(self, e: Invert) -> Value:
        value = self.run(e.operand)
        if isinstance(value, MonoidRingElement):
            value = from_polynomial(value)
        return invert(value)

    def _deriv(self, e: Deriv) -> Value:
        self.check_var(e.var)
        value = self.run(e.operand)
        if isinstance(value, MonoidRingElement):
            return poly_derivative(value, e.var, e.order)
        return value.derivative(e.var, e.order)

    def _truncate(self, e: Truncate) -> Value:
        if e.order < 1:
            raise KernelError("truncation order must be at least 1")
        return truncate(self.run(e.operand), e.order)


def evaluate(source: str | Expr, ring: Ring, declared: tuple[str, ...] = (), strict: bool = False) -> Value:
    tree = parse(source) if isinstance(source, str) else source
    return Interpreter(ring, declared, strict).run(tree)


def render(value: Value, order: int) -> str:
    """Canonical text: polynomials exactly, series truncated with an ``O(...)`` marker."""
    if isinstance(value, PowerSeries):
        return value.to_text(order)
    return str(value)


def parse_polynomial(text: str, ring: Ring) -> MonoidRingElement:
    """Read a polynomial written in the canonical text form."""
    value = evaluate(text, ring)
    if isinstance(value, PowerSeries):
        raise ValueError(f"{text!r} denotes a power series, not a polynomial")
    return value
