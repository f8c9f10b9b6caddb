"""Weil-decoration evaluators.

A decoration is an evaluator: given a vector (a tuple of rational functions)
and a prime divisor it returns the coefficient W(v)_P, an int or ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from ..divisors import INF, PrimeDivisor, WeilDivisor, ord_at, ratio_residue_matches
from ..errors import (
    DimensionMismatch,
    HNotUnit,
    KindMismatch,
    NoContainingCone,
    NotALift,
    NotSmooth,
    ZeroInput,
)
from ..hm.udata import UData, character_function, require_valid
from ..polynomial import Polynomial
from ..ratfunc import RationalFunction
from ..toric import Fan, builtin_fan, dual_basis, is_smooth

Vector = Tuple[RationalFunction, ...]

# basis [12],[13],[14],[23],[24],[34] of the second exterior power on P^4
WEDGE_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def _rf(x) -> RationalFunction:
    if isinstance(x, Polynomial):
        return RationalFunction(x, _normalize=False)
    return x


def is_zero_vector(v: Sequence) -> bool:
    return all(_rf(x).is_zero() for x in v)


def _delta(P: PrimeDivisor, rid: int) -> int:
    return int(P.is_toric and P.ray == rid)


def _dot(a: Sequence, b: Sequence):
    total = None
    for x, y in zip(a, b):
        if not y:
            continue
        term = _rf(x) * y
        total = term if total is None else total + term
    if total is None:
        return _rf(a[0]) * 0
    return total


class Decoration:
    kind = "abstract"
    rank = 0

    def coeff(self, v: Sequence, P: PrimeDivisor):
        raise NotImplementedError

    def _check(self, v: Sequence) -> Vector:
        if len(v) != self.rank:
            raise KindMismatch(f"{self.kind} expects {self.rank} components, got {len(v)}")
        return tuple(_rf(x) for x in v)

    def divisor(self, v: Sequence, support) -> WeilDivisor:
        """W(v) materialised over a declared support."""
        if is_zero_vector(v):
            raise ZeroInput("W(0) is infinite")
        return WeilDivisor.from_items((P, self.coeff(v, P)) for P in support)


@dataclass(frozen=True)
class RankOne(Decoration):
    D: WeilDivisor
    fan: Optional[Fan] = None
    kind = "rank_one"
    rank = 1

    def coeff(self, v, P):
        (f,) = self._check(v)
        o = ord_at(f, P, self.fan)
        return o if o == INF else o + self.D.coeff(P)


@dataclass(frozen=True)
class DirectSum(Decoration):
    parts: Tuple[Decoration, ...]
    kind = "direct_sum"

    @property
    def rank(self):
        return sum(p.rank for p in self.parts)

    def coeff(self, v, P):
        v = self._check(v)
        out = INF
        k = 0
        for part in self.parts:
            out = min(out, part.coeff(v[k:k + part.rank], P))
            k += part.rank
        return out


def seminorm_phi(h, P: PrimeDivisor, f, g, fan: Fan = None):
    """min(ord f, ord g), plus one when (f/g)(P) = h(P); ``h=None`` is the zero class."""
    f, g = _rf(f), _rf(g)
    base = min(ord_at(f, P, fan), ord_at(g, P, fan))
    if h is None or base == INF:
        return base
    if ratio_residue_matches(f, g, _rf(h), P, fan):
        return base + 1
    return base


@dataclass(frozen=True)
class Phi(Decoration):
    """Rank two: the seminorm phi_{h_P, P} at each declared prime, plain min elsewhere."""

    h: Tuple[Tuple[PrimeDivisor, RationalFunction], ...]
    fan: Optional[Fan] = None
    kind = "phi"
    rank = 2

    def __post_init__(self):
        for P, h in self.h:
            if h is not None and ord_at(h, P, self.fan) != 0:
                raise HNotUnit(f"h at {P} is not a unit there")

    @classmethod
    def of(cls, hs: Dict[PrimeDivisor, RationalFunction], fan: Fan = None) -> "Phi":
        return cls(tuple(sorted(hs.items(), key=lambda kv: kv[0].sort_key())), fan)

    def h_at(self, P):
        for Q, h in self.h:
            if Q == P:
                return h
        return None

    def coeff(self, v, P):
        f, g = self._check(v)
        return seminorm_phi(self.h_at(P), P, f, g, self.fan)


@dataclass(frozen=True)
class CorruptedPhi(Phi):
    """Adds one whenever the orders agree, ignoring residues; violates (W2)."""

    kind = "corrupted_phi"

    def coeff(self, v, P):
        f, g = self._check(v)
        of, og = ord_at(f, P, self.fan), ord_at(g, P, self.fan)
        base = min(of, og)
        if self.h_at(P) is not None and of == og and base != INF:
            return base + 1
        return base


def omega_coeff(m: Sequence, P: PrimeDivisor, fan: Fan, log: bool = False):
    """min over rays of ord <m, rho> - delta(P = D_rho) (no delta for the log version)."""
    if not is_smooth(fan):
        raise NotSmooth(f"fan {fan.name} is not smooth")
    if len(m) != fan.dim:
        raise DimensionMismatch(f"character of length {len(m)} on {fan.name}")
    out = INF
    for r in fan.rays:
        o = ord_at(_dot(m, r.vector), P, fan)
        if not log:
            o -= _delta(P, r.id)
        out = min(out, o)
    return out


@dataclass(frozen=True)
class Omega(Decoration):
    fan: Fan
    log: bool = False

    def __post_init__(self):
        if not is_smooth(self.fan):
            raise NotSmooth(f"fan {self.fan.name} is not smooth")

    @property
    def kind(self):
        return "log_omega" if self.log else "omega"

    @property
    def rank(self):
        return self.fan.dim

    def coeff(self, v, P):
        return omega_coeff(self._check(v), P, self.fan, self.log)


def LogOmega(fan: Fan) -> Omega:
    return Omega(fan, log=True)


def containing_cone(fan: Fan, P: PrimeDivisor, sigma: int = None) -> int:
    if sigma is not None:
        if not 0 <= sigma < len(fan.cones):
            raise NoContainingCone(f"fan {fan.name} has no cone {sigma}")
        if P.is_toric and P.ray not in fan.cones[sigma]:
            raise NoContainingCone(f"{P} does not meet the chart of cone {sigma}")
        return sigma
    if not P.is_toric:
        if not fan.cones:
            raise NoContainingCone(f"fan {fan.name} has no maximal cones")
        return 0
    cones = fan.cones_containing(P.ray)
    if not cones:
        raise NoContainingCone(f"no maximal cone contains the ray of {P}")
    return cones[0]


def tangent_terms(a: Sequence, P: PrimeDivisor, fan: Fan, sigma: int = None):
    """[(rho, dual vector, ord <rho^_sigma, a> + delta)] over the rays of sigma."""
    s = containing_cone(fan, P, sigma)
    out = []
    for dc in dual_basis(fan, s):
        o = ord_at(_dot(a, dc.m), P, fan)
        out.append((dc.rho, dc.m, o + _delta(P, dc.rho)))
    return out


def tangent_coeff(a: Sequence, P: PrimeDivisor, fan: Fan, sigma: int = None):
    if not is_smooth(fan):
        raise NotSmooth(f"fan {fan.name} is not smooth")
    if len(a) != fan.dim:
        raise DimensionMismatch(f"covector of length {len(a)} on {fan.name}")
    return min(t[2] for t in tangent_terms(a, P, fan, sigma))


def tangent_witness(a: Sequence, P: PrimeDivisor, fan: Fan, sigma: int = None) -> Tuple[int, ...]:
    """The dual vector rho^_sigma attaining the minimum in the tangent formula."""
    terms = tangent_terms(a, P, fan, sigma)
    best = min(terms, key=lambda t: t[2])
    return best[1]


def special_lift(a: Sequence, P: PrimeDivisor, fan: Fan, sigma: int = None) -> Vector:
    """a(sigma): <rho^_sigma, a> on the rays of sigma, zero elsewhere."""
    s = containing_cone(fan, P, sigma)
    zero = _rf(a[0]) * 0
    vals = {dc.rho: _dot(a, dc.m) for dc in dual_basis(fan, s)}
    return tuple(vals.get(r.id, zero) for r in fan.rays)


def tangent_lift_bound(a: Sequence, lift: Sequence, P: PrimeDivisor, fan: Fan):
    """min over rays of ord lift_rho + delta; a lower bound for tangent_coeff."""
    if len(lift) != len(fan.rays):
        raise DimensionMismatch(f"lift needs {len(fan.rays)} entries")
    lift = tuple(_rf(x) for x in lift)
    for i in range(fan.dim):
        image = _dot(lift, [r.vector[i] for r in fan.rays])
        if image != _rf(a[i]):
            raise NotALift(f"lift does not map to a in coordinate {i + 1}")
    return min(ord_at(x, P, fan) + _delta(P, r.id) for x, r in zip(lift, fan.rays))


@dataclass(frozen=True)
class Tangent(Decoration):
    fan: Fan
    sigma: Optional[int] = None
    kind = "tangent"

    def __post_init__(self):
        if not is_smooth(self.fan):
            raise NotSmooth(f"fan {self.fan.name} is not smooth")

    @property
    def rank(self):
        return self.fan.dim

    def coeff(self, v, P):
        return tangent_coeff(self._check(v), P, self.fan, self.sigma)


def _wedge_get(w: Sequence, i: int, j: int):
    if i == j:
        return _rf(w[0]) * 0
    if i < j:
        return _rf(w[WEDGE_PAIRS.index((i, j))])
    return -_rf(w[WEDGE_PAIRS.index((j, i))])


def lambda2t_coeff(w: Sequence, P: PrimeDivisor, fan: Fan = None):
    """Second exterior power of the tangent decoration on P^4, basis [ij] = a_i ^ a_j."""
    fan = fan or builtin_fan("P4")
    if len(w) != 6:
        raise KindMismatch("Lambda^2 T on P^4 has rank 6")
    if not P.is_toric:
        return min(ord_at(_rf(x), P, fan) for x in w)
    k = P.ray
    out = INF
    if k >= 1:
        for j in range(1, 5):
            if j != k:
                out = min(out, ord_at(_wedge_get(w, j, k), P, fan) + 1)
        for j, l in WEDGE_PAIRS:
            if k not in (j, l):
                out = min(out, ord_at(_wedge_get(w, j, l), P, fan))
        return out
    # at H0 use the basis a0, a2, a3, a4 with a1 = -(a0 + a2 + a3 + a4)
    for l in range(2, 5):
        out = min(out, ord_at(_wedge_get(w, 1, l), P, fan) + 1)
    for j, l in ((2, 3), (2, 4), (3, 4)):
        g = _wedge_get(w, j, l) + _wedge_get(w, 1, j) - _wedge_get(w, 1, l)
        out = min(out, ord_at(g, P, fan))
    return out


@dataclass(frozen=True)
class Lambda2T_P4(Decoration):
    fan: Fan = field(default_factory=lambda: builtin_fan("P4"))
    kind = "lambda2t"
    rank = 6

    def coeff(self, v, P):
        return lambda2t_coeff(self._check(v), P, self.fan)


def hm_coeff(u: UData, f, g, P: PrimeDivisor, fan: Fan = None):
    """W_u(f, g)_P: the seminorm with h = x^{u_rho} at toric primes, plain min elsewhere."""
    fan = fan or u.fan
    require_valid(u)
    f, g = _rf(f), _rf(g)
    if not P.is_toric:
        return seminorm_phi(None, P, f, g, fan)
    ring = f.ring
    h = character_function(fan, u.u(P.ray), ring)
    return seminorm_phi(h, P, f, g, fan)


@dataclass(frozen=True)
class HM(Decoration):
    u: UData
    kind = "hm"
    rank = 2

    def __post_init__(self):
        require_valid(self.u)

    @property
    def fan(self):
        return self.u.fan

    def coeff(self, v, P):
        f, g = self._check(v)
        return hm_coeff(self.u, f, g, P, self.u.fan)


def coeff(d: Decoration, v: Sequence, P: PrimeDivisor):
    """W(v)_P; ``math.inf`` exactly when v = 0."""
    return d.coeff(v, P)


def boundary_divisor(fan: Fan) -> WeilDivisor:
    return WeilDivisor.from_items((PrimeDivisor.toric(r.id, fan.prefix), 1) for r in fan.rays)


KINDS = ("rank_one", "direct_sum", "phi", "omega", "log_omega", "tangent", "lambda2t", "hm")


def fmt(c) -> object:
    """JSON form of a coefficient."""
    return "inf" if c == math.inf else int(c)


__all__ = [
    "Decoration", "RankOne", "DirectSum", "Phi", "CorruptedPhi", "Omega", "LogOmega", "Tangent",
    "Lambda2T_P4", "HM", "coeff", "seminorm_phi", "omega_coeff", "tangent_coeff", "tangent_lift_bound",
    "tangent_witness", "special_lift", "lambda2t_coeff", "hm_coeff", "boundary_divisor", "fmt",
    "WEDGE_PAIRS",
]
