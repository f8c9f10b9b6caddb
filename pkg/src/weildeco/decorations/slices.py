"""Toric slices, their Klyachko filtrations, and dual bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .. import linalg
from ..divisors import INF, PrimeDivisor, ord_at
from ..errors import DimensionMismatch, UnsupportedKind, ZeroInput
from ..hm.udata import UData
from ..ratfunc import RationalFunction
from ..toric import Fan
from .core import HM, Decoration, Omega, Tangent, _rf, fmt, is_zero_vector

SLICE_KINDS = ("omega", "tangent", "hm")


@dataclass
class SliceTable:
    """b_rho(e) for every sample e of a toric slice and every ray rho."""

    kind: str
    fan: Fan
    basis: str
    elements: List[Tuple[int, ...]] = field(default_factory=list)
    rows: List[Tuple[Tuple[int, ...], int, object]] = field(default_factory=list)

    def value(self, e: Sequence[int], rid: int):
        e = tuple(e)
        for x, r, c in self.rows:
            if x == e and r == rid:
                return c
        raise KeyError((e, rid))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "fan": self.fan.name,
            "basis": self.basis,
            "rows": [{"element": list(e), "ray": r, "coeff": fmt(c)} for e, r, c in self.rows],
        }


def lattice_box(dim: int, bound: int = 2, nonzero: bool = True) -> List[Tuple[int, ...]]:
    pts = itertools.product(range(-bound, bound + 1), repeat=dim)
    return [p for p in pts if not (nonzero and not any(p))]


def _decoration(kind: str, fan: Fan, u: UData = None) -> Decoration:
    if kind == "omega":
        return Omega(fan)
    if kind == "tangent":
        return Tangent(fan)
    if kind == "hm":
        if u is None:
            raise UnsupportedKind("the HM slice needs u")
        return HM(u)
    raise UnsupportedKind(f"no toric slice for kind {kind!r}")


def toric_slice_table(kind: str, fan: Fan, samples: Sequence[Sequence[int]] = None, u: UData = None,
                      bound: int = 2) -> SliceTable:
    """Evaluate the decoration on constant slice elements at every toric prime.

    Omega uses characters m in M, Tangent lattice points a in N, HM constant
    pairs (a, b).  By default the samples are all nonzero points of [-bound, bound]^r.
    """
    d = _decoration(kind, fan, u)
    ring = fan.torus_ring()
    if samples is None:
        samples = lattice_box(d.rank, bound)
    basis = {"omega": "M", "tangent": "N", "hm": "constant pairs"}[kind]
    table = SliceTable(kind, fan, basis)
    for e in samples:
        e = tuple(int(x) for x in e)
        if len(e) != d.rank:
            raise DimensionMismatch(f"slice element {list(e)} should have {d.rank} entries")
        v = tuple(RationalFunction.const(ring, x) for x in e)
        table.elements.append(e)
        for r in fan.rays:
            table.rows.append((e, r.id, d.coeff(v, PrimeDivisor.toric(r.id, fan.prefix))))
    return table


def closed_form(kind: str, fan: Fan, e: Sequence[int], rid: int, u: UData = None):
    """The expected slice coefficient, for comparison with the table."""
    rho = fan.ray(rid).vector
    if kind == "omega":
        return -1 if sum(a * b for a, b in zip(e, rho)) else 0
    if kind == "tangent":
        # a in span(rho) iff the 2x2 minors of (a, rho) vanish
        return int(linalg.rank([list(e), list(rho)]) <= 1)
    if kind == "hm":
        a, b = e
        return int(not any(u.u(rid)) and a == b and a != 0)
    raise UnsupportedKind(f"no closed form for kind {kind!r}")


def klyachko_filtration(table: SliceTable, rid: int) -> List[Tuple[int, List[List[Fraction]]]]:
    """E^l = {e : b_rho(e) >= l} for l from the minimum value to the first zero level.

    Each level is a subspace of the slice; its basis is read off the sampled
    elements that reach it.
    """
    if table.kind not in SLICE_KINDS:
        raise UnsupportedKind(f"no filtration for kind {table.kind!r}")
    vals = [(e, c) for e, r, c in table.rows if r == rid]
    if not vals:
        raise DimensionMismatch(f"table has no entries for ray {rid}")
    finite = [c for _, c in vals if c != INF]
    lo, hi = min(finite), max(finite)
    out = []
    for level in range(lo, hi + 2):
        members = [list(e) for e, c in vals if c >= level]
        if members:
            m, piv = linalg.rref(members)
            basis = [row for row in m[:len(piv)]]
        else:
            basis = []
        out.append((level, basis))
    return out


def dual_bound(d: Decoration, phi: Sequence, v: Sequence, P: PrimeDivisor):
    """ord_P(phi(v)) - W(v)_P, an upper bound for the dual coefficient at phi."""
    if len(phi) != d.rank or len(v) != d.rank:
        raise DimensionMismatch(f"phi and v need {d.rank} entries")
    v = tuple(_rf(x) for x in v)
    if is_zero_vector(v):
        raise ZeroInput("v must be nonzero")
    pairing = None
    for a, b in zip(phi, v):
        term = b * a
        pairing = term if pairing is None else pairing + term
    fan = getattr(d, "fan", None)
    return ord_at(pairing, P, fan) - d.coeff(v, P)


__all__ = ["SliceTable", "toric_slice_table", "closed_form", "klyachko_filtration", "dual_bound", "lattice_box"]
