"""Seeded falsification checks for decorations: (W0)-(W2), morphisms, orthogonality.

Samples are generated up front from a ``random.Random(seed)`` stream and only
then evaluated, so a report depends on the seed alone.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from ..divisors import INF, PrimeDivisor, ord_at
from ..errors import DimensionMismatch, LinearlyDependent
from ..expr import format_ratfunc
from ..polynomial import Polynomial, Ring
from ..ratfunc import RationalFunction
from .core import HM, Decoration, Phi, fmt, is_zero_vector

Vector = Tuple[RationalFunction, ...]


# -- sampling --------------------------------------------------------------

def default_hypersurfaces(ring: Ring) -> List[Polynomial]:
    """Two irreducible non-monomial polynomials in torus coordinates."""
    x = ring.gens()
    one = ring.one()
    p1 = one
    for v in x:
        p1 = p1 + v
    p2 = x[0] - ring.const(2) if len(x) == 1 else x[0] * x[1] + ring.const(3)
    return [p1, p2]


def default_primes(fan, ring: Ring = None, hypersurfaces: int = 2) -> List[PrimeDivisor]:
    ring = ring or fan.torus_ring()
    out = [PrimeDivisor.toric(r.id, fan.prefix) for r in fan.rays]
    out += [PrimeDivisor.hypersurface(p) for p in default_hypersurfaces(ring)[:hypersurfaces]]
    return out


@dataclass
class Sampler:
    """Monomial-rich random rational functions built from a fixed factor pool."""

    ring: Ring
    rng: random.Random
    factors: List[Polynomial] = field(default_factory=list)
    max_exp: int = 2

    @classmethod
    def for_ring(cls, ring: Ring, seed: int, extra: Sequence[Polynomial] = ()) -> "Sampler":
        pool = list(default_hypersurfaces(ring))
        pool += [v + ring.const(c) for v, c in zip(ring.gens(), (1, -1, 2, -3, 5))]
        pool += list(extra)
        return cls(ring, random.Random(seed), pool)

    def coefficient(self):
        return self.rng.choice((1, -1, 2, -3, 5, 7))

    def monomial_part(self) -> RationalFunction:
        e = [self.rng.randint(-self.max_exp, self.max_exp) for _ in range(self.ring.nvars)]
        return RationalFunction.laurent_monomial(self.ring, e, self.coefficient())

    def nonzero(self) -> RationalFunction:
        f = self.monomial_part()
        # at most two non-monomial factors keeps sums from swelling
        for p in self.rng.sample(self.factors, self.rng.choice((0, 1, 1, 2))):
            f = f * RationalFunction(p) ** self.rng.choice((1, -1, 2))
        if self.rng.random() < 0.3:
            f = f + self.monomial_part()
            if f.is_zero():
                f = self.monomial_part()
        return f

    def element(self, zero_prob: float = 0.15) -> RationalFunction:
        if self.rng.random() < zero_prob:
            return RationalFunction.const(self.ring, 0)
        return self.nonzero()

    def vector(self, rank: int) -> Vector:
        v = tuple(self.element() for _ in range(rank))
        if is_zero_vector(v):
            v = (self.nonzero(),) + v[1:]
        return v


def _uniformizer(P: PrimeDivisor, fan, ring: Ring) -> RationalFunction:
    if not P.is_toric:
        return RationalFunction(P.poly)
    rho = fan.ray(P.ray).vector
    # a character with <m, rho> = 1; rays are primitive so one exists among +-e_i combos
    k = next(i for i, x in enumerate(rho) if x)
    if abs(rho[k]) == 1:
        m = [0] * len(rho)
        m[k] = rho[k]
        return RationalFunction.laurent_monomial(ring, m)
    from .. import linalg
    sol = linalg.solve([list(rho)], [1])
    return RationalFunction.laurent_monomial(ring, [int(x) for x in sol])


def _directed_partner(d: Decoration, v: Vector, P: PrimeDivisor, s: Sampler) -> Vector:
    """A v' that makes v + v' cancel to high order at P, or hits the residue condition."""
    fan = _fan_of(d)
    t = _uniformizer(P, fan, s.ring)
    mode = s.rng.randrange(4)
    if mode == 0:
        # v' = -v + t^k w
        w = s.vector(len(v))
        k = s.rng.randint(1, 3)
        return tuple(-a + b * t ** k for a, b in zip(v, w))
    if mode == 1:
        return tuple(a * s.coefficient() for a in v)
    if mode == 2:
        # cancel one component to high order and keep the others
        j = s.rng.randrange(len(v))
        k = s.rng.randint(3, 6)
        c = s.coefficient()
        return tuple(-a + s.nonzero() * t ** k if i == j else c * a for i, a in enumerate(v))
    h = _residue_target(d, P, s.ring)
    if h is not None and len(v) == 2:
        g = s.nonzero()
        return (h * g - v[0], g - v[1])
    return s.vector(len(v))


def _residue_target(d: Decoration, P: PrimeDivisor, ring: Ring) -> Optional[RationalFunction]:
    if isinstance(d, HM):
        if not P.is_toric:
            return None
        from ..hm.udata import character_function
        return character_function(d.fan, d.u.u(P.ray), ring)
    if isinstance(d, Phi):
        h = d.h_at(P)
        return None if h is None else h
    return None


# -- reports ---------------------------------------------------------------

def _show(v) -> List[str]:
    return [format_ratfunc(x) for x in v]


@dataclass
class Report:
    name: str
    seed: int
    samples: int
    primes: List[str]
    counts: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, ok: bool, example: Callable[[], dict]):
        self.counts[check] = self.counts.get(check, 0) + 1
        if not ok and check not in self.failures:
            self.failures[check] = example()

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "samples": self.samples,
            "primes": self.primes,
            "checks": {k: {"count": self.counts[k], "pass": k not in self.failures} for k in sorted(self.counts)},
            "counterexamples": self.failures,
            "ok": self.ok,
        }


def _pmap(fn, items, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _fan_of(d: Decoration):
    fan = getattr(d, "fan", None)
    if fan is None and hasattr(d, "parts"):
        fan = next((_fan_of(p) for p in d.parts if _fan_of(p) is not None), None)
    return fan


def _ring_of(d: Decoration, ring: Ring = None) -> Ring:
    return ring if ring is not None else _fan_of(d).torus_ring()


def axioms_check(d: Decoration, primes: Sequence[PrimeDivisor], samples: int = 500, seed: int = 42,
                 ring: Ring = None, threads: int = 1) -> Report:
    """Check (W0), (W1) and (W2) coefficient-wise at each prime on seeded samples."""
    ring = _ring_of(d, ring)
    s = Sampler.for_ring(ring, seed)
    zero = tuple(RationalFunction.const(ring, 0) for _ in range(d.rank))
    cases = []
    for k in range(samples):
        P = primes[k % len(primes)]
        v = s.vector(d.rank)
        f = s.nonzero()
        v2 = _directed_partner(d, v, P, s) if s.rng.random() < 0.5 else s.vector(d.rank)
        cases.append((P, v, f, v2))
    fan = _fan_of(d)

    def run(case):
        P, v, f, v2 = case
        w0 = d.coeff(zero, P)
        wv = d.coeff(v, P)
        wfv = d.coeff(tuple(f * a for a in v), P)
        of = ord_at(f, P, fan)
        w2 = d.coeff(v2, P)
        wsum = d.coeff(tuple(a + b for a, b in zip(v, v2)), P)
        return w0, wv, wfv, of, w2, wsum

    results = _pmap(run, cases, threads)
    rep = Report(d.kind, seed, samples, [str(P) for P in primes])
    for (P, v, f, v2), (w0, wv, wfv, of, w2, wsum) in zip(cases, results):
        rep.record("W0", w0 == INF and wv != INF, lambda: {"prime": str(P), "v": _show(v), "W(0)": fmt(w0), "W(v)": fmt(wv)})
        rep.record("W1", wfv == of + wv, lambda: {
            "prime": str(P), "v": _show(v), "f": format_ratfunc(f), "W(fv)": fmt(wfv), "ord f + W(v)": fmt(of + wv)})
        rep.record("W2", wsum >= min(wv, w2), lambda: {
            "prime": str(P), "v": _show(v), "v'": _show(v2), "W(v+v')": fmt(wsum), "W(v)": fmt(wv), "W(v')": fmt(w2)})
    return rep


def _apply(mu, v: Vector) -> Vector:
    out = []
    for row in mu:
        acc = v[0] * 0
        for a, b in zip(row, v):
            if a:
                acc = acc + b * a
        out.append(acc)
    return tuple(out)


def morphism_check(mu, d: Decoration, d2: Decoration, primes: Sequence[PrimeDivisor], samples: int = 200,
                   seed: int = 42, ring: Ring = None) -> Report:
    """W(v) <= W'(mu v) at each listed prime; ``mu`` has d2.rank rows and d.rank columns."""
    if len(mu) != d2.rank or any(len(row) != d.rank for row in mu):
        raise DimensionMismatch(f"mu must be {d2.rank}x{d.rank}")
    ring = _ring_of(d, ring)
    s = Sampler.for_ring(ring, seed)
    rep = Report(f"{d.kind}->{d2.kind}", seed, samples, [str(P) for P in primes])
    for k in range(samples):
        P = primes[k % len(primes)]
        v = s.vector(d.rank)
        w, w2 = d.coeff(v, P), d2.coeff(_apply(mu, v), P)
        rep.record("morphism", w <= w2, lambda: {"prime": str(P), "v": _show(v), "W(v)": fmt(w), "W'(mu v)": fmt(w2)})
    return rep


# -- orthogonality -----------------------------------------------------------

def k_rank(vectors: Sequence[Vector]) -> int:
    """Rank over the function field by exact Gaussian elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            if not rows[i][c].is_zero():
                fct = rows[i][c] / piv
                rows[i] = [a - fct * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _solve_square(basis: Sequence[Vector], target: Vector) -> Vector:
    """Coefficients f with sum f_i basis_i = target (basis of full rank)."""
    n = len(basis)
    # rows: equations per coordinate, columns: unknown f_i, plus the target
    m = [[basis[i][c] for i in range(n)] + [target[c]] for c in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if not m[i][c].is_zero())
        m[c], m[p] = m[p], m[c]
        inv = m[c][c].inverse()
        m[c] = [a * inv for a in m[c]]
        for i in range(n):
            if i != c and not m[i][c].is_zero():
                fct = m[i][c]
                m[i] = [a - fct * b for a, b in zip(m[i], m[c])]
    return tuple(m[i][n] for i in range(n))


def orthogonality_check(basis: Sequence[Sequence], d: Decoration, P: PrimeDivisor, samples: int = 200,
                        seed: int = 42, directed: bool = False, ring: Ring = None) -> Report:
    """Falsification test: W(sum f_i v_i)_P = min(ord_P f_i + W(v_i)_P) for sampled f_i.

    Generic samples draw the f_i at random.  With ``directed`` half the samples
    instead fix a target combination (high-order cancellation, or a pair with
    the residue condition) and solve for the f_i.
    """
    basis = [tuple(d._check(v)) for v in basis]
    if k_rank(basis) < len(basis):
        raise LinearlyDependent("basis vectors are linearly dependent over K")
    ring = ring or basis[0][0].ring
    fan = _fan_of(d)
    s = Sampler.for_ring(ring, seed)
    base = [d.coeff(v, P) for v in basis]
    square = len(basis) == d.rank
    h = _residue_target(d, P, ring)
    t = _uniformizer(P, fan, ring)
    rep = Report(f"{d.kind}@{P}", seed, samples, [str(P)])
    for _ in range(samples):
        if directed and square and s.rng.random() < 0.5:
            g = s.nonzero()
            if h is not None and s.rng.random() < 0.5:
                target = (h * g, g)
            else:
                target = tuple(t * g * s.nonzero() if s.rng.random() < 0.5 else t * s.element() for _ in basis)
                if is_zero_vector(target):
                    target = (g,) + target[1:]
            fs = _solve_square(basis, target)
        else:
            fs = tuple(s.element() for _ in basis)
            if is_zero_vector(fs):
                fs = (s.nonzero(),) + fs[1:]
        combo = tuple(RationalFunction.const(ring, 0) for _ in range(d.rank))
        for fi, v in zip(fs, basis):
            combo = tuple(a + fi * b for a, b in zip(combo, v))
        lhs = d.coeff(combo, P)
        rhs = min(ord_at(fi, P, fan) + b for fi, b in zip(fs, base))
        rep.record("orthogonal", lhs == rhs, lambda: {
            "f": _show(fs), "W(sum f_i v_i)": fmt(lhs), "min(ord f_i + W(v_i))": fmt(rhs)})
    return rep


__all__ = [
    "Sampler", "Report", "axioms_check", "morphism_check", "orthogonality_check", "k_rank",
    "default_primes", "default_hypersurfaces",
]
