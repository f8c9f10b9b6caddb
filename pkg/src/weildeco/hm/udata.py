"""The integer data u defining an HM-type sheaf."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import DimensionMismatch, InvalidU
from ..polynomial import Ring
from ..ratfunc import RationalFunction
from ..toric import Fan, builtin_fan, pairing

CLASSICAL_MATRIX = (
    (0, 1, -1, -1, 1),
    (1, 0, 1, -1, -1),
    (-1, 1, 0, 1, -1),
    (-1, -1, 1, 0, 1),
    (1, -1, -1, 1, 0),
)


@dataclass(frozen=True)
class UData:
    """One character u_rho in M per ray of ``fan``.

    ``matrix`` (when given) holds the rows iota(u_rho) in the basis of toric
    divisors, indexed like ``fan.rays``.
    """

    fan: Fan
    assignment: Tuple[Tuple[int, Tuple[int, ...]], ...]
    matrix: Optional[Tuple[Tuple[int, ...], ...]] = None

    @property
    def mapping(self) -> Dict[int, Tuple[int, ...]]:
        return dict(self.assignment)

    def u(self, rid: int) -> Tuple[int, ...]:
        for r, m in self.assignment:
            if r == rid:
                return m
        raise InvalidU(f"no character assigned to ray {rid}")

    @classmethod
    def from_assignments(cls, fan: Fan, chars: Sequence[Sequence[int]]) -> "UData":
        if len(chars) != len(fan.rays):
            raise DimensionMismatch(f"{len(chars)} characters for {len(fan.rays)} rays")
        assignment = []
        for r, m in zip(fan.rays, chars):
            if len(m) != fan.dim:
                raise DimensionMismatch(f"character {list(m)} has length {len(m)}, expected {fan.dim}")
            assignment.append((r.id, tuple(int(x) for x in m)))
        rows = tuple(tuple(pairing(m, s.vector) for s in fan.rays) for _, m in assignment)
        return cls(fan, tuple(assignment), rows)

    @classmethod
    def from_matrix(cls, fan: Fan, matrix: Sequence[Sequence[int]]) -> "UData":
        """Rows are iota(u_rho) in the divisor basis; each row must lie in iota(M)."""
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        nr = len(fan.rays)
        if len(matrix) != nr or any(len(row) != nr for row in matrix):
            raise DimensionMismatch(f"u must be a {nr}x{nr} matrix for fan {fan.name}")
        chars = []
        for row in matrix:
            m = _preimage(fan, row)
            if m is None:
                m = _fallback_char(fan, row)
            chars.append(m)
        assignment = tuple((r.id, m) for r, m in zip(fan.rays, chars))
        return cls(fan, assignment, matrix)

    def to_json(self) -> dict:
        return {
            "fan": self.fan.name,
            "matrix": [list(r) for r in self.matrix] if self.matrix else None,
            "assignments": {str(r): list(m) for r, m in self.assignment},
        }

    def is_zero(self) -> bool:
        return all(not any(m) for _, m in self.assignment)

    def restrict_chart(self, nu: int) -> "UData":
        """Delete row and column nu of a P^n matrix, giving data on A^n."""
        if self.matrix is None:
            raise InvalidU("chart restriction needs the matrix form")
        keep = [k for k in range(len(self.matrix)) if k != self.fan.ray_position(nu)]
        rows = [[self.matrix[i][j] for j in keep] for i in keep]
        return UData.from_matrix(builtin_fan(f"A{len(keep)}"), rows)


def _preimage(fan: Fan, row) -> Optional[Tuple[int, ...]]:
    """The m in M with <m, rho> = row[rho] for all rays, if any."""
    from .. import linalg

    vecs = [r.vector for r in fan.rays]
    try:
        sol = linalg.solve(vecs, list(row))
    except ValueError:
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def _fallback_char(fan: Fan, row) -> Tuple[int, ...]:
    # rows outside iota(M) are reported by validate_u; this only keeps the
    # object constructible so the report can be produced
    out = [0] * fan.dim
    for r, x in zip(fan.rays, row):
        nz = [i for i, v in enumerate(r.vector) if v]
        if len(nz) == 1 and r.vector[nz[0]] == 1:
            out[nz[0]] = x
    return tuple(out)


def validate_u(u: UData) -> dict:
    """Report violations of <u_rho, rho> = 0 and, in matrix form, of row sums on P^n."""
    problems = []
    fan = u.fan
    if u.matrix is not None:
        for k, row in enumerate(u.matrix):
            if row[k] != 0:
                problems.append(f"diagonal entry {k} is {row[k]}, not zero")
            if _preimage(fan, row) is None:
                if fan.is_projective_space():
                    problems.append(f"row {k} sums to {sum(row)}, not zero")
                else:
                    problems.append(f"row {k} is not the divisor of a character")
    else:
        for r in fan.rays:
            try:
                m = u.u(r.id)
            except InvalidU as exc:
                problems.append(str(exc))
                continue
            if pairing(m, r.vector) != 0:
                problems.append(f"<u_{r.id}, rho_{r.id}> = {pairing(m, r.vector)}, not zero")
    symmetric = u.matrix is not None and all(
        u.matrix[i][j] == u.matrix[j][i] for i in range(len(u.matrix)) for j in range(len(u.matrix))
    )
    return {"ok": not problems, "violations": problems, "symmetric": symmetric}


def require_valid(u: UData) -> None:
    report = validate_u(u)
    if not report["ok"]:
        raise InvalidU("; ".join(report["violations"]))


def classical_u() -> UData:
    return UData.from_matrix(builtin_fan("P4"), CLASSICAL_MATRIX)


def character_function(fan: Fan, m: Sequence[int], ring: Ring) -> RationalFunction:
    """x^m in torus coordinates, or z^{iota(m)} in Cox coordinates."""
    names = ring.names
    if names and all(n.startswith("x") for n in names) and ring.nvars == fan.dim:
        return RationalFunction.laurent_monomial(ring, m)
    if ring.nvars == len(fan.rays):
        return RationalFunction.laurent_monomial(ring, [pairing(m, r.vector) for r in fan.rays])
    raise DimensionMismatch(f"coordinates {names} do not fit fan {fan.name}")


def split_parts(m: Sequence[int]) -> Tuple[List[int], List[int]]:
    """m = plus - minus with plus, minus >= 0."""
    return [max(x, 0) for x in m], [max(-x, 0) for x in m]
