"""Prime divisors, Weil divisors, orders of vanishing and the residue test.

Orders along toric primes are read off monomials: the initial form of a
polynomial along D_rho collects the monomials minimising <m, rho>, and
distinct characters stay distinct on the divisor torus, so no cancellation
can raise the minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, Optional, Tuple

from .errors import CoordinateMismatch, HNotUnit, ZeroFunction
from .polynomial import Polynomial, multiplicity
from .ratfunc import RationalFunction

INF = math.inf


def _normalize_hypersurface(p: Polynomial) -> Polynomial:
    if p.is_constant():
        raise ValueError("a hypersurface needs a non-constant polynomial")
    if any(p.monomial_content()):
        raise ValueError(f"{p} is divisible by a coordinate variable; use a toric prime")
    den = 1
    num = 0
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    for c in p.terms.values():
        num = gcd(num, (c * den).numerator)
    q = p.scale(Fraction(den, num))
    if q.leading_coefficient() < 0:
        q = -q
    return q


@dataclass(frozen=True)
class PrimeDivisor:
    """Either the toric prime of a ray or a hypersurface ``{p = 0}``.

    Hypersurfaces are given by a polynomial in torus coordinates x1..xn (kind
    ``affine``) or a homogeneous one in z0..zn (kind ``projective``).  The
    polynomial is assumed irreducible; ord_at computes the multiplicity of p
    in any case.
    """

    kind: str
    ray: Optional[int] = None
    poly: Optional[Polynomial] = None
    prefix: str = field(default="D", compare=False)

    @classmethod
    def toric(cls, ray: int, prefix: str = "D") -> "PrimeDivisor":
        return cls("toric", ray=int(ray), prefix=prefix)

    @classmethod
    def hypersurface(cls, p: Polynomial) -> "PrimeDivisor":
        projective = all(n.startswith("z") for n in p.ring.names)
        if projective and not p.is_homogeneous():
            raise ValueError(f"{p} is not homogeneous")
        return cls("projective" if projective else "affine", poly=_normalize_hypersurface(p))

    @property
    def is_toric(self) -> bool:
        return self.kind == "toric"

    def sort_key(self):
        if self.is_toric:
            return (0, self.ray, "")
        return (1, 0, str(self.poly))

    def __str__(self) -> str:
        if self.is_toric:
            return f"{self.prefix}{self.ray}"
        return f"{{{self.poly}}}"

    def to_json(self) -> dict:
        if self.is_toric:
            return {"kind": "toric", "data": self.ray, "name": str(self)}
        return {"kind": self.kind, "data": str(self.poly)}


class WeilDivisor:
    """Finitely supported integer combination of prime divisors."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Dict[PrimeDivisor, int] = None):
        self._coeffs = {p: int(c) for p, c in (coeffs or {}).items() if c}

    @classmethod
    def from_items(cls, items: Iterable[Tuple[PrimeDivisor, int]]) -> "WeilDivisor":
        acc: Dict[PrimeDivisor, int] = {}
        for p, c in items:
            acc[p] = acc.get(p, 0) + c
        return cls(acc)

    @classmethod
    def prime(cls, p: PrimeDivisor, c: int = 1) -> "WeilDivisor":
        return cls({p: c})

    def coeff(self, p: PrimeDivisor) -> int:
        return self._coeffs.get(p, 0)

    def __getitem__(self, p: PrimeDivisor) -> int:
        return self.coeff(p)

    @property
    def support(self) -> Tuple[PrimeDivisor, ...]:
        return tuple(sorted(self._coeffs, key=PrimeDivisor.sort_key))

    def items(self):
        return [(p, self._coeffs[p]) for p in self.support]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "WeilDivisor") -> "WeilDivisor":
        return WeilDivisor.from_items(list(self._coeffs.items()) + list(other._coeffs.items()))

    def __neg__(self) -> "WeilDivisor":
        return WeilDivisor({p: -c for p, c in self._coeffs.items()})

    def __sub__(self, other: "WeilDivisor") -> "WeilDivisor":
        return self + (-other)

    def __rmul__(self, k: int) -> "WeilDivisor":
        return WeilDivisor({p: k * c for p, c in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WeilDivisor) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __le__(self, other: "WeilDivisor") -> bool:
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self.coeff(p) <= other.coeff(p) for p in keys)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._coeffs.values())

    def meet(self, other: "WeilDivisor") -> "WeilDivisor":
        return meet_join(self, other, "meet")

    def join(self, other: "WeilDivisor") -> "WeilDivisor":
        return meet_join(self, other, "join")

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        out = []
        for p, c in self.items():
            sign = "-" if c < 0 else "+"
            body = str(p) if abs(c) == 1 else f"{abs(c)}{p}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"WeilDivisor({str(self)!r})"

    def to_json(self) -> list:
        return [{"prime": p.to_json(), "coeff": c} for p, c in self.items()]


def meet_join(d1: WeilDivisor, d2: WeilDivisor, mode: str = "meet") -> WeilDivisor:
    """Coefficient-wise min (``meet``) or max (``join``)."""
    if mode not in ("meet", "join"):
        raise ValueError(f"mode must be 'meet' or 'join', not {mode!r}")
    op = min if mode == "meet" else max
    keys = set(d1._coeffs) | set(d2._coeffs)
    return WeilDivisor({p: op(d1.coeff(p), d2.coeff(p)) for p in keys})


def _toric_poly_ord(p: Polynomial, weights) -> int:
    return min(sum(w * e for w, e in zip(weights, exp)) for exp in p.terms)


def toric_weights(fan, ray_id: int, ring) -> Tuple[int, ...]:
    """Weights w with ord_{D_rho}(x^e) = <w, e> for the coordinates of ``ring``.

    Torus coordinates (one variable per lattice direction, named x*) use the
    ray vector; Cox coordinates (one variable per ray) pick out z_rho.
    """
    names = ring.names
    if names and all(n.startswith("x") for n in names) and ring.nvars == fan.dim:
        return fan.ray(ray_id).vector
    if ring.nvars == len(fan.rays):
        pos = fan.ray_position(ray_id)
        return tuple(int(k == pos) for k in range(ring.nvars))
    raise CoordinateMismatch(f"coordinates {ring.names} do not match fan {fan.name}")


def ord_at(f, P: PrimeDivisor, fan=None):
    """Order of vanishing of f along P; ``math.inf`` for f = 0."""
    if isinstance(f, Polynomial):
        f = RationalFunction(f, _normalize=False)
    if f.is_zero():
        return INF
    if P.is_toric:
        if fan is None:
            raise CoordinateMismatch("toric orders need a fan")
        w = toric_weights(fan, P.ray, f.ring)
        return _toric_poly_ord(f.num, w) - _toric_poly_ord(f.den, w)
    if P.poly.ring != f.ring:
        raise CoordinateMismatch(f"{f} and the prime {P} use different coordinates")
    return multiplicity(f.num, P.poly) - multiplicity(f.den, P.poly)


def principal_divisor_on_support(f, support, fan=None) -> WeilDivisor:
    if isinstance(f, Polynomial):
        f = RationalFunction(f, _normalize=False)
    if f.is_zero():
        raise ZeroFunction("div(0) is not a divisor")
    return WeilDivisor.from_items((P, ord_at(f, P, fan)) for P in support)


def _as_rf(x):
    if isinstance(x, Polynomial):
        return RationalFunction(x, _normalize=False)
    return x


def ratio_residue_matches(f, g, h, P: PrimeDivisor, fan=None) -> bool:
    """Does (f/g)(P) equal h(P) in the residue field of P?

    Decided without residue fields: ord f = ord g < inf and ord(f - h g) > ord g.
    ``h`` must be a unit along P.
    """
    f, g, h = (_as_rf(x) for x in (f, g, h))
    oh = ord_at(h, P, fan)
    if oh != 0:
        raise HNotUnit(f"ord_{P}({h}) = {oh}, not a unit")
    of = ord_at(f, P, fan)
    og = ord_at(g, P, fan)
    if of != og or og == INF:
        return False
    return ord_at(f - h * g, P, fan) > og
