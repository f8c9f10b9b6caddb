"""Sparse multivariate polynomials over the rationals.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, tied to a :class:`Ring` that names
its variables.  Terms are printed and normalised in graded reverse
lexicographic order with the variables in declared order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Sequence, Tuple

from .errors import CoordinateMismatch, DivisionByZero, IndexOutOfRange, NotDivisible

Exponent = Tuple[int, ...]


def grevlex_key(exp: Exponent):
    """Sort key realising graded reverse lexicographic order (larger = bigger)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp: Exponent):
    return tuple(exp)


def divides(a: Exponent, b: Exponent) -> bool:
    """True iff the monomial ``x^a`` divides ``x^b``."""
    return all(i <= j for i, j in zip(a, b))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(i + j for i, j in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(i - j for i, j in zip(a, b))


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[names]; two rings are equal iff their names agree."""

    names: Tuple[str, ...]

    @classmethod
    def affine(cls, n: int, prefix: str = "x", start: int = 1) -> "Ring":
        return cls(tuple(f"{prefix}{i}" for i in range(start, start + n)))

    @classmethod
    def cox(cls, n: int) -> "Ring":
        """Homogeneous coordinate ring z0..zn of P^n."""
        return cls.affine(n + 1, "z", 0)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"variable index {i} outside 0..{self.nvars - 1}")
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise CoordinateMismatch(f"exponent {exp} does not fit ring {self.names}")
        if any(e < 0 for e in exp):
            raise ValueError(f"negative exponent in polynomial monomial {exp}")
        c = Fraction(coeff)
        return Polynomial(self, {exp: c} if c else {})

    def __str__(self) -> str:
        return "Q[" + ",".join(self.names) + "]"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` never stores zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Dict[Exponent, Fraction]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: Ring, items: Iterable[Tuple[Sequence[int], object]]) -> "Polynomial":
        acc: Dict[Exponent, Fraction] = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != ring.nvars:
                raise CoordinateMismatch(f"exponent {exp} does not fit ring {ring.names}")
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(c)
        return cls(ring, {e: c for e, c in acc.items() if c})

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise CoordinateMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # -- structure ------------------------------------------------------
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_exponent(self) -> Exponent:
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_exponent()]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def monomial_content(self) -> Exponent:
        """Componentwise minimum exponent, i.e. the largest monomial factor."""
        if not self.terms:
            return (0,) * self.ring.nvars
        it = iter(self.terms)
        cur = list(next(it))
        for e in it:
            for i, v in enumerate(e):
                if v < cur[i]:
                    cur[i] = v
        return tuple(cur)

    def var_degree(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def min_var_degree(self, i: int) -> int:
        return min(e[i] for e in self.terms)

    def shift(self, exp: Exponent) -> "Polynomial":
        """Multiply by x^exp; ``exp`` may be negative provided the result is a polynomial."""
        out = {}
        for e, c in self.terms.items():
            ne = _add_exp(e, exp)
            if any(v < 0 for v in ne):
                raise NotDivisible(f"{self} is not divisible by the monomial x^{tuple(-v for v in exp)}")
            out[ne] = c
        return Polynomial(self.ring, out)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def substitute_zero(self, i: int) -> "Polynomial":
        """Set variable ``i`` (0-based) to zero."""
        if not 0 <= i < self.ring.nvars:
            raise IndexOutOfRange(f"variable index {i} outside 0..{self.ring.nvars - 1}")
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if e[i] == 0})

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.ring.nvars:
            raise CoordinateMismatch("point dimension does not match the ring")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def set_variable(self, i: int, value, target: Ring) -> "Polynomial":
        """Substitute ``x_i = value`` and drop the variable, landing in ``target``."""
        value = Fraction(value)
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1:]
            out[ne] = out.get(ne, Fraction(0)) + c * value ** e[i]
        return Polynomial(target, {e: c for e, c in out.items() if c})

    def rename(self, target: Ring) -> "Polynomial":
        if target.nvars != self.ring.nvars:
            raise CoordinateMismatch("rename needs rings of equal size")
        return Polynomial(target, self.terms)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out)

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
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self.sorted_terms())

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        from .expr import format_polynomial

        return format_polynomial(self)


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Return ``q`` with ``a == q*b``; raise :class:`NotDivisible` otherwise."""
    if b.ring != a.ring:
        raise CoordinateMismatch("exact_divide across different rings")
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero():
        return a
    lb = b.leading_exponent()
    cb = b.terms[lb]
    if len(b.terms) == 1:
        inv = 1 / cb
        out = {}
        for e, c in a.terms.items():
            if not divides(lb, e):
                raise NotDivisible(f"{b} does not divide {a}")
            out[_sub_exp(e, lb)] = c * inv
        return Polynomial(a.ring, out)
    r = dict(a.terms)
    q: Dict[Exponent, Fraction] = {}
    btail = [(e, c) for e, c in b.terms.items() if e != lb]
    while r:
        lr = max(r, key=grevlex_key)
        if not divides(lb, lr):
            raise NotDivisible(f"{b} does not divide {a}")
        s = _sub_exp(lr, lb)
        t = r.pop(lr) / cb
        q[s] = t
        for e, c in btail:
            ne = _add_exp(e, s)
            v = r.get(ne, Fraction(0)) - t * c
            if v:
                r[ne] = v
            else:
                r.pop(ne, None)
    return Polynomial(a.ring, q)


def substitute_zero(f: Polynomial, i: int) -> Polynomial:
    """Set the ``i``-th variable (1-based, as in x1..xn) to zero."""
    if not 1 <= i <= f.ring.nvars:
        raise IndexOutOfRange(f"variable index {i} outside 1..{f.ring.nvars}")
    return f.substitute_zero(i - 1)


def multiplicity(f: Polynomial, p: Polynomial) -> int:
    """Largest k with p^k | f (f nonzero)."""
    if f.is_zero():
        raise ValueError("multiplicity of the zero polynomial is infinite")
    if p.is_constant():
        raise ValueError("multiplicity is only defined for non-constant factors")
    k = 0
    while True:
        try:
            f = exact_divide(f, p)
        except NotDivisible:
            return k
        k += 1
