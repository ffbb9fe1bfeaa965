"""Exact scalar expressions: rationals, integer square roots, and sines and
cosines of rational multiples of pi.

This is the wire format for every numeric component in input files.  The
grammar is

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := rational | 'sqrt(' int ')' | 'cospi(' rational ')'
            | 'sinpi(' rational ')' | '-' factor | '(' expr ')'

where ``rational`` is ``int`` or ``int/int``.  Whitespace is ignored.
Expressions are stored as trees and evaluated once, at construction, so the
same tree always yields the bit-identical float.  There is no symbolic
simplification: exactness lives in the tree, comparisons happen on evaluated
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


class ScalarError(ValueError):
    """Base class for scalar construction and parse failures."""


class ScalarSyntaxError(ScalarError):
    """Malformed expression text; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ScalarDomainError(ScalarError):
    """Structurally valid expression with an invalid value (sqrt of a
    non-positive integer, division by zero)."""


def _cospi(t: Fraction) -> float:
    """cos(pi*t) for rational t, with exact argument reduction.

    Reduction keeps the libm call on [0, pi/4], so multiples of 1/2 come out
    exactly 0.0 / +-1.0 and everything else stays within a few ulp.
    """
    t = t % 2
    if t > 1:
        t = 2 - t
    sign = 1.0
    if t > Fraction(1, 2):
        t = 1 - t
        sign = -1.0
    if t == 0:
        return sign
    if t == Fraction(1, 2):
        return 0.0
    if t <= Fraction(1, 4):
        return sign * math.cos(math.pi * float(t))
    return sign * math.sin(math.pi * float(Fraction(1, 2) - t))


def _sinpi(t: Fraction) -> float:
    return _cospi(t - Fraction(1, 2))


_LEAVES = ("rat", "sqrt", "cospi", "sinpi")
_BINARY = ("add", "sub", "mul", "div")


@dataclass(frozen=True)
class ExactScalar:
    """One node of an expression tree.  Use the module constructors below;
    they enforce the domain rules and precompute ``value``."""

    op: str
    rat: Fraction | None = None
    args: tuple["ExactScalar", ...] = ()
    value: float = field(default=0.0, compare=False)

    def __str__(self) -> str:
        return format_scalar(self)

    def __float__(self) -> float:
        return self.value


def rational(num: int | Fraction, den: int = 1) -> ExactScalar:
    f = Fraction(num, den)
    return ExactScalar("rat", rat=f, value=float(f))


def sqrt_int(n: int) -> ExactScalar:
    if not isinstance(n, int) or n <= 0:
        raise ScalarDomainError(f"sqrt argument must be a positive integer, got {n!r}")
    return ExactScalar("sqrt", rat=Fraction(n), value=math.sqrt(n))


def cospi(t: int | Fraction) -> ExactScalar:
    t = Fraction(t)
    return ExactScalar("cospi", rat=t, value=_cospi(t))


def sinpi(t: int | Fraction) -> ExactScalar:
    t = Fraction(t)
    return ExactScalar("sinpi", rat=t, value=_sinpi(t))


def neg(a: ExactScalar) -> ExactScalar:
    return ExactScalar("neg", args=(a,), value=-a.value)


def add(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return ExactScalar("add", args=(a, b), value=a.value + b.value)


def sub(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return ExactScalar("sub", args=(a, b), value=a.value - b.value)


def mul(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return ExactScalar("mul", args=(a, b), value=a.value * b.value)


def div(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    from . import config

    if abs(b.value) <= config.EPS_SCALAR:
        raise ScalarDomainError(f"division by an expression evaluating to 0: {format_scalar(b)}")
    return ExactScalar("div", args=(a, b), value=a.value / b.value)


def eval_scalar(s: ExactScalar) -> float:
    return s.value


# --- printing ---------------------------------------------------------------

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3}


def _fmt(s: ExactScalar, parent_prec: int, right_side: bool) -> str:
    if s.op == "rat":
        text = str(s.rat)
        # "p/q" re-parses as a division and "-p" as unary minus; both are
        # value-exact, but they need parens wherever they would regroup
        needs_parens = (s.rat < 0 and (parent_prec > 1 or right_side)) or (
            s.rat.denominator != 1 and parent_prec > 2
        )
        return f"({text})" if needs_parens else text
    if s.op == "sqrt":
        return f"sqrt({s.rat})"
    if s.op in ("cospi", "sinpi"):
        return f"{s.op}({s.rat})"
    if s.op == "neg":
        inner = _fmt(s.args[0], _PREC["neg"], False)
        text = f"-{inner}"
        return f"({text})" if parent_prec > 2 or right_side else text
    prec = _PREC[s.op]
    sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[s.op]
    left = _fmt(s.args[0], prec, False)
    # parenthesize equal-precedence right children: floats are not
    # associative, and the printed text must reproduce the tree shape
    right = _fmt(s.args[1], prec + 1, True)
    text = f"{left}{sym}{right}"
    if prec < parent_prec:
        return f"({text})"
    return text


def format_scalar(s: ExactScalar) -> str:
    """Render a tree in the input grammar.  parse(format(s)) evaluates to
    exactly eval(s)."""
    return _fmt(s, 0, False)


# --- parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ScalarSyntaxError:
        return ScalarSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def try_take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def take_signed_rational(self) -> Fraction:
        negative = self.try_take("-")
        num = self.take_int()
        den = 1
        if self.try_take("/"):
            den = self.take_int()
            if den == 0:
                raise ScalarDomainError("zero denominator in rational literal")
        f = Fraction(num, den)
        return -f if negative else f

    def take_name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def parse_expr(self) -> ExactScalar:
        node = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                node = add(node, self.parse_term())
            elif ch == "-":
                self.pos += 1
                node = sub(node, self.parse_term())
            else:
                return node

    def parse_term(self) -> ExactScalar:
        node = self.parse_factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                node = mul(node, self.parse_factor())
            elif ch == "/":
                self.pos += 1
                node = div(node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> ExactScalar:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return neg(self.parse_factor())
        if ch == "(":
            self.pos += 1
            node = self.parse_expr()
            self.take(")")
            return node
        if ch.isdigit():
            return rational(self.take_int())
        if ch.isalpha():
            name = self.take_name()
            if name == "sqrt":
                self.take("(")
                negative = self.try_take("-")
                n = self.take_int()
                self.take(")")
                return sqrt_int(-n if negative else n)
            if name in ("cospi", "sinpi"):
                self.take("(")
                t = self.take_signed_rational()
                self.take(")")
                return cospi(t) if name == "cospi" else sinpi(t)
            raise self.error(f"unknown function {name!r}")
        raise self.error("expected a factor")


def parse_scalar(text: str) -> ExactScalar:
    """Parse expression text into a tree.  Raises ScalarSyntaxError with a
    byte offset on malformed input and ScalarDomainError on invalid values."""
    p = _Parser(text)
    node = p.parse_expr()
    p.skip_ws()
    if p.pos != len(text):
        raise p.error("trailing characters after expression")
    return node
