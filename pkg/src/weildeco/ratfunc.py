"""Rational functions as lazily normalised fractions of polynomials.

No multivariate gcd is ever computed.  Normalisation cancels the common
monomial factor, tries one exact division in each direction, and makes the
denominator's leading coefficient 1.  Equality is decided by
cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Sequence, Tuple

from .errors import (
    CoordinateMismatch,
    DivisionByZero,
    InhomogeneousProjectiveInput,
    NotDivisible,
    ZeroInput,
)
from .polynomial import Exponent, Polynomial, Ring, exact_divide


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = None, _normalize: bool = True):
        if den is None:
            den = num.ring.one()
        if num.ring != den.ring:
            raise CoordinateMismatch("numerator and denominator live in different rings")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if _normalize:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    @property
    def ring(self) -> Ring:
        return self.num.ring

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, ring: Ring, c) -> "RationalFunction":
        return cls(ring.const(c))

    @classmethod
    def laurent_monomial(cls, ring: Ring, exp: Sequence[int], coeff=1) -> "RationalFunction":
        """``coeff * x^exp`` where ``exp`` may have negative entries."""
        pos = tuple(max(e, 0) for e in exp)
        neg = tuple(max(-e, 0) for e in exp)
        return cls(ring.monomial(pos, coeff), ring.monomial(neg), _normalize=False)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.ring != self.ring:
                raise CoordinateMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise CoordinateMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return RationalFunction(other, _normalize=False)
        if isinstance(other, (int, Rational)):
            return RationalFunction(self.ring.const(other), _normalize=False)
        return NotImplemented

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_homogeneous(self) -> bool:
        return self.num.is_homogeneous() and self.den.is_homogeneous()

    def degree(self) -> int:
        """Degree of a homogeneous fraction (numerator minus denominator)."""
        if not self.is_homogeneous():
            raise InhomogeneousProjectiveInput(f"{self} is not homogeneous")
        if self.num.is_zero():
            return 0
        return self.num.degree() - self.den.degree()

    def as_polynomial(self) -> Polynomial:
        if not self.den.is_constant():
            raise NotDivisible(f"{self} is not a polynomial")
        return self.num.scale(1 / self.den.leading_coefficient())

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalize=False)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if other.den.is_constant() or self.den.is_constant():
            return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)
        # common denominator when one divides the other, else the product
        big, small = (self, other) if len(self.den.terms) >= len(other.den.terms) else (other, self)
        try:
            q = exact_divide(big.den, small.den)
        except NotDivisible:
            q = None
        if q is not None:
            return RationalFunction(big.num + small.num * q, big.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _normalize=False)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return ratfunc_eq(self, other)

    __hash__ = None

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise DivisionByZero(f"denominator of {self} vanishes at {tuple(point)}")
        return self.num.evaluate(point) / d

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def __str__(self) -> str:
        from .expr import format_ratfunc

        return format_ratfunc(self)


class GradedFraction(RationalFunction):
    """Quotient of homogeneous polynomials in Cox coordinates.

    ``degree`` is the numerator degree minus the denominator degree; elements
    of the function field are the degree-0 fractions.
    """

    __slots__ = ()

    def __init__(self, num: Polynomial, den: Polynomial = None, _normalize: bool = True):
        super().__init__(num, den, _normalize)
        if not (self.num.is_homogeneous() and self.den.is_homogeneous()):
            raise InhomogeneousProjectiveInput(f"{num} / {den} is not a quotient of homogeneous polynomials")

    @classmethod
    def of(cls, f: RationalFunction) -> "GradedFraction":
        return cls(f.num, f.den, _normalize=False)


def _normalize_pair(num: Polynomial, den: Polynomial) -> Tuple[Polynomial, Polynomial]:
    ring = num.ring
    if num.is_zero():
        return num, ring.one()
    a = num.monomial_content()
    b = den.monomial_content()
    common = tuple(min(i, j) for i, j in zip(a, b))
    if any(common):
        neg = tuple(-c for c in common)
        num = num.shift(neg)
        den = den.shift(neg)
    if not den.is_constant():
        if den.is_monomial() or len(den.terms) <= len(num.terms):
            try:
                num = exact_divide(num, den)
                den = ring.one()
            except NotDivisible:
                pass
        if not den.is_constant() and len(num.terms) > 1 and len(num.terms) <= len(den.terms):
            try:
                den = exact_divide(den, num)
                num = ring.one()
            except NotDivisible:
                pass
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def ratfunc_eq(f: RationalFunction, g: RationalFunction) -> bool:
    """Equality by cross-multiplication."""
    if f.ring != g.ring:
        raise CoordinateMismatch("comparing rational functions from different rings")
    if f.den == g.den:
        return f.num == g.num
    return f.num * g.den == g.num * f.den


def laurent_split(f: RationalFunction) -> Tuple[Exponent, Polynomial, Polynomial]:
    """Write ``f = x^alpha * a / b`` with a, b free of monomial factors.

    ``alpha`` may have negative entries.  When ``b`` divides ``a`` exactly the
    quotient is returned with ``b = 1``.
    """
    if f.is_zero():
        raise ZeroInput("laurent_split of zero")
    ca = f.num.monomial_content()
    cb = f.den.monomial_content()
    alpha = tuple(i - j for i, j in zip(ca, cb))
    a = f.num.shift(tuple(-i for i in ca))
    b = f.den.shift(tuple(-i for i in cb))
    if not b.is_constant():
        try:
            a = exact_divide(a, b)
            b = f.ring.one()
        except NotDivisible:
            pass
    lc = b.leading_coefficient()
    return alpha, a.scale(1 / lc), b.scale(1 / lc)


def as_ratfunc(ring: Ring, value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        if value.ring != ring:
            raise CoordinateMismatch(f"{value} is not in {ring}")
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    return RationalFunction.const(ring, value)
