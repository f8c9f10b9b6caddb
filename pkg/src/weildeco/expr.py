"""Expression parsing and canonical printing.

Grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)?
    exponent:= ['-'] INT | '(' ['-'] INT ')'
    atom    := INT | IDENT | '(' expr ')'

Identifiers must be variables of the ring in context.  Positions in error
messages are 0-based character offsets.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import ExprSyntaxError, InhomogeneousProjectiveInput
from .polynomial import Polynomial, Ring
from .ratfunc import GradedFraction, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_VAR = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _tokenize(src: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, ring: Ring):
        self.tokens = _tokenize(src)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] != "op":
            raise ExprSyntaxError(f"expected {value!r}", tok[2])

    def parse(self) -> RationalFunction:
        if self.peek()[0] == "end":
            raise ExprSyntaxError("empty expression", self.peek()[2])
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ExprSyntaxError("division by zero", tok[2])
                value = value / rhs
        return value

    def unary(self) -> RationalFunction:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.take()
            k = self.exponent()
            if k < 0 and base.is_zero():
                raise ExprSyntaxError("negative power of zero", tok[2])
            return base ** k
        return base

    def exponent(self) -> int:
        paren = False
        if self.peek()[1] == "(" and self.peek()[0] == "op":
            self.take()
            paren = True
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "int":
            raise ExprSyntaxError("exponent must be an integer", tok[2])
        if paren:
            self.expect(")")
        return sign * int(tok[1])

    def atom(self) -> RationalFunction:
        tok = self.take()
        kind, text, pos = tok
        if kind == "int":
            return RationalFunction(self.ring.const(int(text)), _normalize=False)
        if kind == "ident":
            if text not in self.ring.names:
                raise ExprSyntaxError(f"unknown variable {text!r}", pos)
            return RationalFunction(self.ring.var(self.ring.index(text)), _normalize=False)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos)
        raise ExprSyntaxError(f"unexpected {text!r}", pos)


def parse_expression(src: str, ring: Ring, graded: Optional[bool] = None) -> RationalFunction:
    """Parse ``src`` into a rational function of ``ring``.

    With ``graded`` (default: the ring uses z-variables) the result is a
    :class:`GradedFraction` and homogeneity of numerator and denominator is
    enforced.
    """
    value = _Parser(src, ring).parse()
    if graded is None:
        graded = bool(ring.names) and all(n.startswith("z") for n in ring.names)
    if graded:
        if not value.is_homogeneous():
            raise InhomogeneousProjectiveInput(f"{src!r} is not a quotient of homogeneous polynomials")
        return GradedFraction.of(value)
    return value


def parse_polynomial(src: str, ring: Ring) -> Polynomial:
    value = _Parser(src, ring).parse()
    if not value.is_polynomial():
        raise ValueError(f"{src!r} is not a polynomial")
    return value.as_polynomial()


def variables_in(src: str) -> List[str]:
    return _VAR.findall(src)


def infer_ring(sources, default: Ring) -> Ring:
    """Pick the Cox ring z0..zn when any source mentions a z-variable."""
    names = {v for s in sources for v in variables_in(s)}
    if names and all(v.startswith("z") for v in names) and not default.names[0].startswith("z"):
        top = max(int(v[1:]) for v in names if v[1:].isdigit()) if names else 0
        return Ring.cox(max(top, default.nvars))
    return default


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(ring: Ring, exp) -> str:
    parts = []
    for name, e in zip(ring.names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (exp, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_monomial(p.ring, exp)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _wrap(p: Polynomial, den: bool = False) -> str:
    s = format_polynomial(p)
    if len(p.terms) > 1 or "/" in s or (den and "*" in s):
        return f"({s})"
    return s


def format_ratfunc(f: RationalFunction) -> str:
    if f.den.is_constant():
        return format_polynomial(f.num.scale(1 / f.den.leading_coefficient()))
    return f"{_wrap(f.num)}/{_wrap(f.den, den=True)}"
