"""Gröbner bases for submodules of free modules R^g over R = Q[x1..xn].

Vectors are handled internally as sparse dicts ``{(component, exponent):
coefficient}``; the public API speaks in tuples of :class:`Polynomial`.
Syzygies, intersections, kernels and quotients all reduce to a single
primitive: a Gröbner basis in an extended free module under a
position-over-term order that eliminates one block of components.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    DimensionMismatch,
    IterationCap,
    OrderMismatch,
    RankMismatch,
    ZeroDivisorInput,
)
from .polynomial import Exponent, Polynomial, Ring, divides, exact_divide

Term = Tuple[int, Exponent]
Vec = Dict[Term, Fraction]
PolyVector = Tuple[Polynomial, ...]

SATURATION_CAP = 64


@dataclass(frozen=True)
class ModuleOrder:
    """Monomial order on R^g.

    ``base`` is ``grevlex`` or ``lex``; ``position`` is ``pot``
    (position-over-term) or ``top``.  ``priority`` lists components from most
    to least significant; by default component 0 is the most significant.
    """

    base: str = "grevlex"
    position: str = "pot"
    priority: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.base not in ("grevlex", "lex"):
            raise ValueError(f"unknown base order {self.base!r}")
        if self.position not in ("pot", "top"):
            raise ValueError(f"unknown position rule {self.position!r}")

    def keyfunc(self, rank: int):
        """Flat integer-tuple key of a term; larger means bigger."""
        prio = self.priority if self.priority is not None else tuple(range(rank))
        if sorted(prio) != list(range(rank)):
            raise OrderMismatch(f"priority {prio} is not a permutation of 0..{rank - 1}")
        weight = {c: rank - k for k, c in enumerate(prio)}
        grevlex = self.base == "grevlex"
        pot = self.position == "pot"

        def key(term: Term) -> Tuple[int, ...]:
            c, e = term
            mono = (sum(e),) + tuple(-x for x in reversed(e)) if grevlex else tuple(e)
            return (weight[c],) + mono if pot else mono + (weight[c],)

        return key


DEFAULT_ORDER = ModuleOrder()


# -- sparse vector helpers -----------------------------------------------

def to_vec(polys: Sequence[Polynomial]) -> Vec:
    out: Vec = {}
    for c, p in enumerate(polys):
        for e, v in p.terms.items():
            out[(c, e)] = v
    return out


def from_vec(v: Vec, ring: Ring, rank: int) -> PolyVector:
    parts: List[Dict[Exponent, Fraction]] = [{} for _ in range(rank)]
    for (c, e), x in v.items():
        parts[c][e] = x
    return tuple(Polynomial(ring, p) for p in parts)


def _shift_scale_sub(target: Vec, vec: Vec, coef: Fraction, shift: Exponent, on_new=None) -> None:
    """target -= coef * x^shift * vec, in place."""
    for (c, e), x in vec.items():
        t = (c, tuple(a + b for a, b in zip(e, shift)))
        nv = target.get(t, 0) - coef * x
        if nv:
            if on_new is not None and t not in target:
                on_new(t)
            target[t] = nv
        else:
            target.pop(t, None)


@dataclass
class _Element:
    vec: Vec
    lead: Term
    lc: Fraction


def _lead(vec: Vec, key) -> Term:
    return max(vec, key=key)


def _make_element(vec: Vec, key, monic: bool = True) -> _Element:
    lt = _lead(vec, key)
    lc = vec[lt]
    if monic and lc != 1:
        inv = 1 / lc
        vec = {t: x * inv for t, x in vec.items()}
        lc = Fraction(1)
    return _Element(vec, lt, lc)


def _find_reducer(term: Term, basis: Sequence[_Element]) -> Optional[_Element]:
    c, e = term
    for g in basis:
        gc, ge = g.lead
        if gc == c and divides(ge, e):
            return g
    return None


def _reduce(vec: Vec, basis: Sequence[_Element], key, full: bool = True) -> Vec:
    """Remainder of ``vec`` on division by ``basis``."""
    if not basis or not vec:
        return dict(vec)
    work = dict(vec)
    heap = [(tuple(-x for x in key(t)), t) for t in work]
    heapq.heapify(heap)
    queued = set(work)
    rem: Vec = {}

    def push(t):
        queued.add(t)
        heapq.heappush(heap, (tuple(-x for x in key(t)), t))

    while heap:
        _, t = heapq.heappop(heap)
        queued.discard(t)
        x = work.get(t)
        if not x:
            continue
        g = _find_reducer(t, basis)
        if g is None:
            if not full:
                rem.update(work)
                return rem
            rem[t] = work.pop(t)
            continue
        shift = tuple(a - b for a, b in zip(t[1], g.lead[1]))
        _shift_scale_sub(work, g.vec, x / g.lc, shift, on_new=lambda s: None if s in queued else push(s))
    return rem


def _reduce_tracking(vec: Vec, basis: Sequence[_Element], key) -> Tuple[Vec, Dict[int, Dict[Exponent, Fraction]]]:
    """Division with remainder that also records the quotient of each basis element."""
    work = dict(vec)
    rem: Vec = {}
    quot: Dict[int, Dict[Exponent, Fraction]] = {}
    while work:
        t = max(work, key=key)
        x = work[t]
        hit = None
        for idx, g in enumerate(basis):
            if g.lead[0] == t[0] and divides(g.lead[1], t[1]):
                hit = idx
                break
        if hit is None:
            rem[t] = work.pop(t)
            continue
        g = basis[hit]
        shift = tuple(a - b for a, b in zip(t[1], g.lead[1]))
        q = x / g.lc
        qd = quot.setdefault(hit, {})
        qd[shift] = qd.get(shift, 0) + q
        _shift_scale_sub(work, g.vec, q, shift)
    return rem, quot


def _schreyer(basis: Sequence[_Element], key, ring: Ring) -> List[PolyVector]:
    """Relations among a Gröbner basis from its S-pair reductions."""
    s = len(basis)
    cols = []
    for i in range(s):
        for j in range(i + 1, s):
            if basis[i].lead[0] != basis[j].lead[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(basis[i].lead[1], basis[j].lead[1]))
            sa = tuple(a - b for a, b in zip(lcm, basis[i].lead[1]))
            sb = tuple(a - b for a, b in zip(lcm, basis[j].lead[1]))
            rem, quot = _reduce_tracking(_spoly(basis[i], basis[j]), basis, key)
            if rem:
                raise ArithmeticError("input to the Schreyer construction is not a Gröbner basis")
            entries: List[Dict[Exponent, Fraction]] = [dict() for _ in range(s)]
            for k, qd in quot.items():
                for e, c in qd.items():
                    entries[k][e] = entries[k].get(e, 0) + c
            entries[i][sa] = entries[i].get(sa, 0) - 1 / basis[i].lc
            entries[j][sb] = entries[j].get(sb, 0) + 1 / basis[j].lc
            col = tuple(Polynomial(ring, {e: c for e, c in d.items() if c}) for d in entries)
            if any(not p.is_zero() for p in col):
                cols.append(col)
    return cols


def _spoly(f: _Element, g: _Element) -> Vec:
    lcm = tuple(max(a, b) for a, b in zip(f.lead[1], g.lead[1]))
    sf = tuple(a - b for a, b in zip(lcm, f.lead[1]))
    sg = tuple(a - b for a, b in zip(lcm, g.lead[1]))
    out: Vec = {}
    _shift_scale_sub(out, f.vec, -1 / f.lc, sf)
    _shift_scale_sub(out, g.vec, 1 / g.lc, sg)
    return out


def _buchberger(vectors: Iterable[Vec], key) -> List[_Element]:
    basis: List[_Element] = []
    pending = set()
    heap = []

    def add(el: _Element):
        idx = len(basis)
        basis.append(el)
        for j in range(idx):
            if basis[j].lead[0] != el.lead[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(basis[j].lead[1], el.lead[1]))
            pending.add((j, idx))
            heapq.heappush(heap, (tuple(-x for x in key((el.lead[0], lcm))), j, idx, lcm))

    for v in vectors:
        r = _reduce(v, basis, key)
        if r:
            add(_make_element(r, key))

    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        pending.discard((i, j))
        comp = basis[i].lead[0]
        skip = False
        for k, g in enumerate(basis):
            if k in (i, j) or g.lead[0] != comp or not divides(g.lead[1], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        r = _reduce(_spoly(basis[i], basis[j]), basis, key)
        if r:
            add(_make_element(r, key))
    return basis


def _interreduce(basis: List[_Element], key) -> List[_Element]:
    keep: List[_Element] = []
    for i, g in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if i == j or h.lead[0] != g.lead[0] or not divides(h.lead[1], g.lead[1]):
                continue
            if h.lead != g.lead or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce(g.vec, others, key)
        out.append(_make_element(r, key))
    out.sort(key=lambda el: key(el.lead), reverse=True)
    return out


# -- public types ----------------------------------------------------------

class Submodule:
    """Submodule of R^rank given by generators.

    The reduced Gröbner basis for a given order is computed on demand and
    cached; it always generates the same module as ``gens``.
    """

    def __init__(self, ring: Ring, rank: int, gens: Iterable[Sequence[Polynomial]]):
        self.ring = ring
        self.rank = rank
        cleaned = []
        for v in gens:
            v = tuple(v)
            if len(v) != rank:
                raise RankMismatch(f"vector of length {len(v)} in a module of rank {rank}")
            if any(p.ring != ring for p in v):
                raise RankMismatch("generator lives in a different ring")
            if any(not p.is_zero() for p in v):
                cleaned.append(v)
        self.gens: Tuple[PolyVector, ...] = tuple(cleaned)
        self._gb: Dict[ModuleOrder, List[_Element]] = {}

    @classmethod
    def free(cls, ring: Ring, rank: int) -> "Submodule":
        return cls(ring, rank, [unit_vector(ring, rank, c) for c in range(rank)])

    def _basis(self, order: ModuleOrder) -> List[_Element]:
        if order not in self._gb:
            key = order.keyfunc(self.rank)
            raw = _buchberger((to_vec(v) for v in self.gens), key)
            self._gb[order] = _interreduce(raw, key)
        return self._gb[order]

    def groebner_basis(self, order: ModuleOrder = DEFAULT_ORDER) -> List[PolyVector]:
        return [from_vec(el.vec, self.ring, self.rank) for el in self._basis(order)]

    def contains(self, v: Sequence[Polynomial], order: ModuleOrder = DEFAULT_ORDER) -> bool:
        key = order.keyfunc(self.rank)
        return not _reduce(to_vec(v), self._basis(order), key, full=False)

    def is_zero(self) -> bool:
        return not self.gens

    def __repr__(self) -> str:
        return f"Submodule(rank={self.rank}, ngens={len(self.gens)})"


@dataclass
class Presentation:
    """Generators of a module together with the full syzygy module.

    ``matrix`` holds one column per syzygy, each of length ``ngens``.
    """

    ring: Ring
    ngens: int
    matrix: List[PolyVector] = field(default_factory=list)

    def generic_rank(self, trials: int = 4) -> int:
        """Rank of the presented module at a generic point."""
        best = 0
        for pt in _probe_points(self.ring.nvars, trials):
            best = max(best, _eval_rank(self.matrix, pt, self.ngens))
        return self.ngens - best


def _probe_points(n: int, count: int) -> List[Tuple[Fraction, ...]]:
    # fixed, fairly "random" rational points keep the result deterministic
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    pts = []
    for k in range(count):
        pts.append(tuple(Fraction(primes[(k * n + i) % len(primes)] * (k + 1) + i, 7 + k) for i in range(n)))
    return pts


def _eval_rank(columns: Sequence[PolyVector], point, nrows: int) -> int:
    if not columns:
        return 0
    rows = [[col[r].evaluate(point) for col in columns] for r in range(nrows)]
    return linalg.rank(rows)


def unit_vector(ring: Ring, rank: int, c: int) -> PolyVector:
    return tuple(ring.one() if k == c else ring.zero() for k in range(rank))


def _check_same(M: Submodule, N: Submodule) -> None:
    if M.rank != N.rank or M.ring != N.ring:
        raise RankMismatch(f"modules of rank {M.rank} and {N.rank} (or different rings)")


# -- operations -----------------------------------------------------------

def normal_form(v: Sequence[Polynomial], M: Submodule, order: ModuleOrder = DEFAULT_ORDER,
                gb_order: ModuleOrder = None) -> PolyVector:
    """Remainder of v on division by the reduced Gröbner basis of M."""
    if gb_order is not None and gb_order != order:
        raise OrderMismatch("the Gröbner basis was computed for a different order")
    if len(v) != M.rank:
        raise RankMismatch(f"vector of length {len(v)} in a module of rank {M.rank}")
    key = order.keyfunc(M.rank)
    return from_vec(_reduce(to_vec(v), M._basis(order), key), M.ring, M.rank)


def buchberger(M: Submodule, order: ModuleOrder = DEFAULT_ORDER) -> Submodule:
    """Submodule generated by its reduced Gröbner basis (canonically sorted)."""
    out = Submodule(M.ring, M.rank, M.groebner_basis(order))
    out._gb[order] = M._basis(order)
    return out


def _extended_gb(rows: Sequence[Vec], rank: int) -> Tuple[List[_Element], int]:
    order = ModuleOrder(priority=tuple(range(rank)))
    key = order.keyfunc(rank)
    raw = _buchberger(rows, key)
    return _interreduce(raw, key), rank


def syzygies(M: Submodule) -> Presentation:
    """All relations among the generators of M."""
    g, s = M.rank, len(M.gens)
    rows = []
    for k, v in enumerate(M.gens):
        vec = to_vec(v)
        vec[(g + k, (0,) * M.ring.nvars)] = Fraction(1)
        rows.append(vec)
    basis, _ = _extended_gb(rows, g + s)
    cols = []
    for el in basis:
        if el.lead[0] >= g:
            shifted = {(c - g, e): x for (c, e), x in el.vec.items()}
            cols.append(from_vec(shifted, M.ring, s))
    return Presentation(M.ring, s, cols)


def _prune(ring: Ring, gens: List[PolyVector], columns: List[PolyVector]) -> List[PolyVector]:
    """Drop generators that a relation with a nonzero constant entry makes redundant.

    Eliminating generator k with relation c rewrites every other relation d as
    d - (d_k / c_k) c, so the columns keep generating all relations among the
    survivors and no further Gröbner computation is needed.
    """
    gens = list(gens)
    cols = [list(c) for c in columns]
    while True:
        pick = None
        for ci, c in enumerate(cols):
            for k in range(len(gens) - 1, -1, -1):
                if not c[k].is_zero() and c[k].is_constant():
                    pick = (ci, k)
                    break
            if pick:
                break
        if pick is None:
            return gens
        ci, k = pick
        c = cols.pop(ci)
        inv = 1 / c[k].leading_coefficient()
        new_cols = []
        for d in cols:
            if not d[k].is_zero():
                factor = d[k] * inv
                d = [x - factor * y for x, y in zip(d, c)]
            d = d[:k] + d[k + 1:]
            if any(not x.is_zero() for x in d):
                new_cols.append(d)
        cols = new_cols
        del gens[k]


def kernel_of_matrix(T: Sequence[Sequence[Polynomial]], ring: Ring = None) -> Submodule:
    """{v : T v = 0} for a matrix given as a list of rows."""
    if not T:
        raise DimensionMismatch("empty matrix")
    ring = ring or T[0][0].ring
    nrows, ncols = len(T), len(T[0])
    columns = [tuple(T[r][c] for r in range(nrows)) for c in range(ncols)]
    pres = syzygies(_raw_submodule(ring, nrows, columns))
    return Submodule(ring, ncols, pres.matrix)


def _raw_submodule(ring: Ring, rank: int, vectors) -> Submodule:
    """Like Submodule but keeps zero generators, so positions are preserved."""
    out = Submodule(ring, rank, [])
    out.gens = tuple(tuple(v) for v in vectors)
    return out


def intersect(M: Submodule, N: Submodule) -> Submodule:
    """M ∩ N from the relations among the columns of [gens(M) | -gens(N)]."""
    _check_same(M, N)
    g = M.rank
    if M.is_zero() or N.is_zero():
        return Submodule(M.ring, g, [])
    rows = []
    # (m | m) and (n | 0): relations sum a m + b n = 0 leave sum a m in block two
    for v in M.gens:
        vec = to_vec(v)
        vec.update({(c + g, e): x for (c, e), x in to_vec(v).items()})
        rows.append(vec)
    for v in N.gens:
        rows.append(to_vec(v))
    basis, _ = _extended_gb(rows, 2 * g)
    out = []
    for el in basis:
        if el.lead[0] >= g:
            out.append(from_vec({(c - g, e): x for (c, e), x in el.vec.items()}, M.ring, g))
    return Submodule(M.ring, g, out)


def quotient(M: Submodule, f: Polynomial) -> Submodule:
    """(M : f) = {v : f v in M}."""
    if f.is_zero():
        raise ZeroDivisorInput("module quotient by zero")
    g = M.rank
    fR = Submodule(M.ring, g, [tuple(f if k == c else M.ring.zero() for k in range(g)) for c in range(g)])
    inter = intersect(M, fR)
    return Submodule(M.ring, g, [tuple(exact_divide(p, f) for p in v) for v in inter.gens])


def contained_in(M: Submodule, N: Submodule) -> bool:
    _check_same(M, N)
    return all(N.contains(v) for v in M.gens)


def equal_modules(M: Submodule, N: Submodule) -> bool:
    _check_same(M, N)
    return contained_in(M, N) and contained_in(N, M)


def saturate(M: Submodule, f: Polynomial, cap: int = SATURATION_CAP) -> Submodule:
    """(M : f^inf), by iterated quotients until the chain stabilises."""
    if f.is_zero():
        raise ZeroDivisorInput("saturation by zero")
    if f.is_constant():
        return M
    current = M
    for _ in range(cap):
        nxt = quotient(current, f)
        # current is always contained in nxt, so one inclusion decides equality
        if contained_in(nxt, current):
            return buchberger(current)
        current = nxt
    raise IterationCap(f"saturation by {f} did not stabilise after {cap} steps")


def local_freeness_probe(pres: Presentation, point: Sequence) -> Tuple[int, str]:
    """Evaluate the relation matrix at ``point``.

    Returns the evaluated rank and a verdict: ``not locally free`` when more
    generators survive than the generic rank allows, else ``no obstruction``.
    """
    if len(point) != pres.ring.nvars:
        raise DimensionMismatch(f"point of length {len(point)} for {pres.ring.nvars} variables")
    r = _eval_rank(pres.matrix, [Fraction(x) for x in point], pres.ngens)
    if pres.ngens - r > pres.generic_rank():
        return r, "not locally free"
    return r, "no obstruction"


def minimal_generators(M: Submodule, order: ModuleOrder = DEFAULT_ORDER) -> Submodule:
    """Reduced Gröbner basis with generators removed along unit relations."""
    gb = M.groebner_basis(order)
    relations = _schreyer(M._basis(order), order.keyfunc(M.rank), M.ring)
    out = Submodule(M.ring, M.rank, _prune(M.ring, gb, relations))
    # same module: reuse the basis, recomputing it from few generators can be far slower
    out._gb[order] = M._basis(order)
    return out
