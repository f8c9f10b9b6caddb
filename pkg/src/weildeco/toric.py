"""Smooth fans, the character pairing and dual bases of maximal cones."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from typing import List, Sequence, Tuple

from . import linalg
from .errors import DimensionMismatch, IndexOutOfRange, NotSmooth, UnknownName
from .polynomial import Ring


@dataclass(frozen=True)
class Ray:
    id: int
    vector: Tuple[int, ...]


@dataclass(frozen=True)
class DualCovector:
    sigma: int
    rho: int
    m: Tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    """A fan given by its rays and maximal cones (lists of ray ids).

    ``prefix`` is used when naming the toric prime divisors (``H0``, ``D3``).
    Cox coordinates are indexed by the position of a ray in ``rays``.
    """

    dim: int
    rays: Tuple[Ray, ...]
    cones: Tuple[Tuple[int, ...], ...]
    name: str = field(default="custom", compare=False)
    prefix: str = field(default="D", compare=False)

    @classmethod
    def from_data(cls, dim: int, rays: Sequence[Sequence[int]], cones: Sequence[Sequence[int]],
                  ids: Sequence[int] = None, name: str = "custom", prefix: str = "D") -> "Fan":
        if ids is None:
            ids = range(len(rays))
        return cls(
            dim=dim,
            rays=tuple(Ray(i, tuple(int(x) for x in r)) for i, r in zip(ids, rays)),
            cones=tuple(tuple(int(i) for i in c) for c in cones),
            name=name,
            prefix=prefix,
        )

    @property
    def ray_ids(self) -> Tuple[int, ...]:
        return tuple(r.id for r in self.rays)

    def ray(self, rid: int) -> Ray:
        for r in self.rays:
            if r.id == rid:
                return r
        raise IndexOutOfRange(f"fan {self.name} has no ray {rid}")

    def ray_position(self, rid: int) -> int:
        for k, r in enumerate(self.rays):
            if r.id == rid:
                return k
        raise IndexOutOfRange(f"fan {self.name} has no ray {rid}")

    def prime_name(self, rid: int) -> str:
        return f"{self.prefix}{rid}"

    def cones_containing(self, rid: int) -> List[int]:
        return [k for k, c in enumerate(self.cones) if rid in c]

    def torus_ring(self) -> Ring:
        return Ring.affine(self.dim)

    def cox_ring(self) -> Ring:
        """z-variables indexed by ray id (only for fans with ids 0..r-1 in order)."""
        if self.ray_ids == tuple(range(len(self.rays))):
            return Ring.affine(len(self.rays), "z", 0)
        if self.is_affine_space():
            return self.torus_ring()
        raise UnknownName(f"fan {self.name} has no standard Cox coordinate names")

    def is_affine_space(self) -> bool:
        return len(self.rays) == self.dim and all(
            r.vector == tuple(int(i == k) for i in range(self.dim)) for k, r in enumerate(self.rays)
        )

    def is_projective_space(self) -> bool:
        n = self.dim
        return self.name.startswith("P") and len(self.rays) == n + 1 and self.ray(0).vector == (-1,) * n

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "rays": {str(r.id): list(r.vector) for r in self.rays},
            "cones": [list(c) for c in self.cones],
        }


def pairing(m: Sequence, rho: Sequence):
    return sum(a * b for a, b in zip(m, rho))


def validate_fan(fan: Fan) -> dict:
    """Check the standing assumptions; violations are reported, never raised."""
    problems = []
    ids = [r.id for r in fan.rays]
    if len(set(ids)) != len(ids):
        problems.append("duplicate ray ids")
    vectors = [r.vector for r in fan.rays]
    for r in fan.rays:
        if len(r.vector) != fan.dim:
            problems.append(f"ray {r.id} has length {len(r.vector)}, expected {fan.dim}")
            continue
        if not any(r.vector):
            problems.append(f"ray {r.id} is zero")
            continue
        g = 0
        for x in r.vector:
            g = gcd(g, x)
        if g != 1:
            problems.append(f"ray {r.id} is not primitive")
    if len(set(vectors)) != len(vectors):
        problems.append("rays are not pairwise distinct")
    if problems:
        return {"ok": False, "violations": problems}
    if linalg.rank(vectors) != fan.dim:
        problems.append("rays do not span")
    used = set()
    for k, cone in enumerate(fan.cones):
        if any(i not in ids for i in cone):
            problems.append(f"cone {k} refers to an unknown ray")
            continue
        used.update(cone)
        if len(cone) != fan.dim:
            problems.append(f"cone {k} has {len(cone)} rays, expected {fan.dim}")
            continue
        det = linalg.determinant([fan.ray(i).vector for i in cone])
        if abs(det) != 1:
            problems.append(f"cone {k}: |det| = {abs(det)}, not smooth")
    for i in ids:
        if i not in used:
            problems.append(f"ray {i} lies in no maximal cone")
    return {"ok": not problems, "violations": problems}


def character_divisor(fan: Fan, m: Sequence[int]):
    """iota(m) = sum over rays of <m, rho> D_rho."""
    from .divisors import PrimeDivisor, WeilDivisor

    if len(m) != fan.dim:
        raise DimensionMismatch(f"character of length {len(m)} on a fan of dimension {fan.dim}")
    return WeilDivisor.from_items(
        (PrimeDivisor.toric(r.id, fan.prefix), pairing(m, r.vector)) for r in fan.rays
    )


def dual_basis(fan: Fan, sigma: int) -> List[DualCovector]:
    if not 0 <= sigma < len(fan.cones):
        raise IndexOutOfRange(f"fan {fan.name} has no cone {sigma}")
    cone = fan.cones[sigma]
    mat = [fan.ray(i).vector for i in cone]
    if len(cone) != fan.dim or abs(linalg.determinant(mat)) != 1:
        raise NotSmooth(f"cone {sigma} of {fan.name} is not smooth")
    # columns of the inverse of the ray-row matrix are the dual vectors
    inv = linalg.inverse(mat)
    out = []
    for j, rid in enumerate(cone):
        m = tuple(int(inv[i][j]) for i in range(fan.dim))
        out.append(DualCovector(sigma, rid, m))
    return out


def is_smooth(fan: Fan) -> bool:
    return all(
        len(c) == fan.dim and abs(linalg.determinant([fan.ray(i).vector for i in c])) == 1 for c in fan.cones
    )


def affine_space(n: int) -> Fan:
    rays = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    return Fan.from_data(n, rays, [list(range(1, n + 1))], ids=range(1, n + 1), name=f"A{n}", prefix="H")


def projective_space(n: int) -> Fan:
    rays = [(-1,) * n] + [tuple(int(i == k) for i in range(n)) for k in range(n)]
    cones = [[j for j in range(n + 1) if j != k] for k in range(n + 1)]
    return Fan.from_data(n, rays, cones, name=f"P{n}", prefix="H")


def product_of_lines(n: int) -> Fan:
    """(P^1)^n with rays e1, -e1, e2, -e2, ... labelled 1..2n."""
    rays = []
    for k in range(n):
        for s in (1, -1):
            rays.append(tuple(s * int(i == k) for i in range(n)))
    cones = []
    for signs in range(2 ** n):
        cones.append([2 * k + 1 + ((signs >> k) & 1) for k in range(n)])
    name = "P1xP1" if n == 2 else f"P1^{n}"
    return Fan.from_data(n, rays, cones, ids=range(1, 2 * n + 1), name=name, prefix="D")


_NAME = re.compile(r"^(?:([AP])(\d+)|affine\((\d+)\)|projective\((\d+)\)|P1x(?:P1x)*P1|P1\^(\d+))$")


def builtin_fan(name: str) -> Fan:
    """Standard fans: ``A<n>``/``affine(n)``, ``P<n>``/``projective(n)``, ``P1xP1``/``P1^n``."""
    m = _NAME.match(name.strip())
    if not m:
        raise UnknownName(f"unknown fan {name!r}")
    if m.group(1):
        n = int(m.group(2))
        if n < 1:
            raise UnknownName(f"fan dimension must be positive in {name!r}")
        return affine_space(n) if m.group(1) == "A" else projective_space(n)
    if m.group(3):
        return affine_space(int(m.group(3)))
    if m.group(4):
        return projective_space(int(m.group(4)))
    if m.group(5):
        return product_of_lines(int(m.group(5)))
    return product_of_lines(name.count("P1"))


def fan_from_json(data: dict) -> Fan:
    try:
        dim = int(data["dim"])
        rays = data["rays"]
        cones = data["cones"]
    except (KeyError, TypeError) as exc:
        raise UnknownName(f"fan JSON needs dim, rays and cones: {exc}") from None
    return Fan.from_data(dim, rays, cones, name=data.get("name", "custom"))
