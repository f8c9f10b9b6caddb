"""Generators of HM(u) on affine space and the Cox-graded module on P^n.

Everything on A^n is cleared by p = x1...xn: we compute the polynomial
module p*HM(u) inside R^2 and divide by p only for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ..divisors import PrimeDivisor
from ..errors import InvalidU, NotDivisible
from ..gb import Submodule, equal_modules, intersect, minimal_generators, saturate
from ..polynomial import Polynomial, Ring
from ..ratfunc import RationalFunction, laurent_split
from ..toric import Fan, builtin_fan
from .udata import UData, require_valid, split_parts

Pair = Tuple[RationalFunction, RationalFunction]


@dataclass
class HMGenerators:
    """p*HM(u) as a submodule of R^2, with the generators divided back by p."""

    ring: Ring
    u: UData
    cleared: Submodule
    method: str

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def p(self) -> Polynomial:
        return denominator_monomial(self.ring)

    @property
    def gens(self) -> List[Pair]:
        p = self.p
        return [(RationalFunction(a, p), RationalFunction(b, p)) for a, b in self.cleared.gens]

    def contains_pair(self, f: RationalFunction, g: RationalFunction) -> bool:
        """Gröbner membership of (f, g) in HM(u)."""
        return groebner_member(self, f, g)

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "gens": [[str(f), str(g)] for f, g in self.gens],
            "method": self.method,
        }


def denominator_monomial(ring: Ring) -> Polynomial:
    return ring.monomial((1,) * ring.nvars)


def _affine_rows(u: UData) -> List[Tuple[int, ...]]:
    fan = u.fan
    if not fan.is_affine_space():
        raise InvalidU(f"affine generators need u on affine space, not {fan.name}")
    require_valid(u)
    return [u.u(r.id) for r in fan.rays]


def local_generators(u: UData, i: int, ring: Ring = None) -> Pair:
    """(1/x_i) (x^{u+(i)}, x^{u-(i)}) for the ray H_i (1-based)."""
    rows = _affine_rows(u)
    ring = ring or Ring.affine(len(rows))
    if not 1 <= i <= len(rows):
        raise InvalidU(f"ray index {i} outside 1..{len(rows)}")
    plus, minus = split_parts(rows[i - 1])
    xi = ring.var(i - 1)
    return RationalFunction(ring.monomial(plus), xi), RationalFunction(ring.monomial(minus), xi)


def _canonical(module: Submodule) -> Submodule:
    return minimal_generators(module)


def hm_via_intersection(u: UData, ring: Ring = None) -> HMGenerators:
    """p*HM(u) = intersection over i of <(x^{u+(i)}, x^{u-(i)}), (x_i, 0), (0, x_i)>."""
    rows = _affine_rows(u)
    n = len(rows)
    ring = ring or Ring.affine(n)
    zero = ring.zero()
    result = None
    for i, m in enumerate(rows):
        plus, minus = split_parts(m)
        xi = ring.var(i)
        Mi = Submodule(ring, 2, [(ring.monomial(plus), ring.monomial(minus)), (xi, zero), (zero, xi)])
        result = Mi if result is None else intersect(result, Mi)
    return HMGenerators(ring, u, _canonical(result), "intersect")


def hm_prime(u: UData, ring: Ring = None) -> Submodule:
    """p*HM'(u): the special generators p_i*(x^{u+(i)}, x^{u-(i)}) together with p*R^2."""
    rows = _affine_rows(u)
    n = len(rows)
    ring = ring or Ring.affine(n)
    p = denominator_monomial(ring)
    zero = ring.zero()
    gens = []
    for i, m in enumerate(rows):
        plus, minus = split_parts(m)
        pi_exp = tuple(int(k != i) for k in range(n))
        gens.append((ring.monomial([a + b for a, b in zip(plus, pi_exp)]),
                     ring.monomial([a + b for a, b in zip(minus, pi_exp)])))
    gens += [(p, zero), (zero, p)]
    return Submodule(ring, 2, gens)


def hm_via_hull(u: UData, ring: Ring = None) -> HMGenerators:
    """Reflexive hull of HM'(u) as the intersection of its saturations by p_i."""
    rows = _affine_rows(u)
    n = len(rows)
    ring = ring or Ring.affine(n)
    base = hm_prime(u, ring)
    result = None
    for i in range(n):
        sat = base
        # (M : (ab)^inf) = ((M : a^inf) : b^inf), so saturate one variable at a time
        for j in range(n):
            if j != i:
                sat = saturate(sat, ring.var(j))
        result = sat if result is None else intersect(result, sat)
    if n == 1:
        result = base
    return HMGenerators(ring, u, _canonical(result), "hull")


def compute(u: UData, method: str = "intersect", ring: Ring = None) -> HMGenerators:
    if method in ("intersect", "intersection"):
        return hm_via_intersection(u, ring)
    if method == "hull":
        return hm_via_hull(u, ring)
    raise ValueError(f"unknown method {method!r}")


def same_module(a: HMGenerators, b: HMGenerators) -> bool:
    return equal_modules(a.cleared, b.cleared)


def free_basis_module(ring: Ring) -> Submodule:
    """p times <(1, 0), (1/p, 1/p)>: the expected answer for u = 0."""
    p = denominator_monomial(ring)
    return Submodule(ring, 2, [(p, ring.zero()), (ring.one(), ring.one())])


# -- membership -----------------------------------------------------------

def _laurent_exponent(f: RationalFunction):
    """Exponent alpha with f = x^alpha * a, a a polynomial; None if f has torus poles."""
    if f.is_zero():
        return None
    alpha, a, b = laurent_split(f)
    if not b.is_constant():
        return False
    return alpha


def membership_oracle(u: UData, f: RationalFunction, g: RationalFunction, fan: Fan = None) -> Tuple[bool, dict]:
    """Is (f, g) a global section of HM(u)?

    Both components must be Laurent polynomials and every toric coefficient
    of W_u must be non-negative.  The certificate lists those coefficients.
    """
    from ..decorations.core import hm_coeff

    fan = fan or u.fan
    require_valid(u)
    cert: Dict[str, object] = {}
    for name, h in (("f", f), ("g", g)):
        if _laurent_exponent(h) is False:
            cert["laurent"] = False
            cert["reason"] = f"{name} has poles off the toric boundary"
            return False, cert
    cert["laurent"] = True
    coeffs = {}
    ok = True
    for r in fan.rays:
        P = PrimeDivisor.toric(r.id, fan.prefix)
        c = hm_coeff(u, f, g, P, fan)
        coeffs[str(P)] = c
        if c < 0:
            ok = False
    cert["coefficients"] = coeffs
    return ok, cert


def groebner_member(gens: HMGenerators, f: RationalFunction, g: RationalFunction) -> bool:
    """Independent membership test through the cleared module.

    p*HM(u) sits inside R^2, so (f, g) lies in HM(u) iff (p f, p g) is a
    polynomial pair in p*HM(u).  The Gröbner basis of the cleared module is
    cached, so repeated queries only pay for one reduction each.
    """
    parts = []
    for h in (f, g):
        v = h * gens.p
        if not v.is_polynomial():
            return False
        parts.append(v.as_polynomial())
    return gens.cleared.contains(tuple(parts))


# -- Cox module on P^n ------------------------------------------------------

@dataclass
class CoxModule:
    """M(u) over z0..zn: HM of the same matrix on A^(n+1), graded by total degree."""

    u: UData
    affine: HMGenerators
    charts: Dict[int, Submodule] = field(default_factory=dict)

    @property
    def ring(self) -> Ring:
        return self.affine.ring

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    def graded_gens(self) -> List[Tuple[Polynomial, Polynomial]]:
        return list(self.affine.cleared.gens)

    def is_graded(self) -> bool:
        for a, b in self.affine.cleared.gens:
            if not (a.is_homogeneous() and b.is_homogeneous()):
                return False
            if not a.is_zero() and not b.is_zero() and a.degree() != b.degree():
                return False
        return True

    def chart(self, nu: int) -> Submodule:
        """Dehomogenise the cleared generators at z_nu = 1, renaming the rest x1..xn."""
        if nu not in self.charts:
            target = Ring.affine(self.n)
            gens = [tuple(c.set_variable(nu, 1, target) for c in v) for v in self.affine.cleared.gens]
            self.charts[nu] = Submodule(target, 2, gens)
        return self.charts[nu]

    def chart_matches(self, nu: int, method: str = "intersect") -> bool:
        """Compare the localisation at z_nu with HM(u_nu) computed directly on A^n.

        Inclusion one way uses the dehomogenised generators; the other way
        homogenises the chart generators and tests them against (M : z_nu^inf).
        """
        expected = compute(self.u.restrict_chart(nu), method).cleared
        if not all(expected.contains(v) for v in self.chart(nu).gens):
            return False
        sat = saturate(self.affine.cleared, self.ring.var(nu))
        return all(sat.contains(homogenize_pair(v, nu, self.ring)) for v in expected.gens)


def homogenize_pair(v, nu: int, ring: Ring):
    """Inverse of dehomogenisation at z_nu for a pair of common degree."""
    d = max(p.degree() for p in v if not p.is_zero())
    out = []
    for p in v:
        terms = {}
        for e, c in p.terms.items():
            full = list(e[:nu]) + [d - sum(e)] + list(e[nu:])
            terms[tuple(full)] = c
        out.append(Polynomial(ring, terms))
    return tuple(out)


def cox_module(u: UData, method: str = "intersect") -> CoxModule:
    fan = u.fan
    if not fan.is_projective_space():
        raise InvalidU("the Cox module needs u on projective space")
    require_valid(u)
    n = fan.dim
    aff = UData.from_matrix(builtin_fan(f"A{n + 1}"), u.matrix)
    ring = Ring.cox(n)
    return CoxModule(u, compute(aff, method, ring))


def scaling_profile(gens: HMGenerators) -> Dict[str, List[object]]:
    """H_i-coefficient of W_u at every generator, per prime."""
    from ..decorations.core import hm_coeff

    fan = gens.u.fan
    out = {}
    for r in fan.rays:
        P = PrimeDivisor.toric(r.id, fan.prefix)
        out[str(P)] = [hm_coeff(gens.u, f, g, P, fan) for f, g in gens.gens]
    return out


def clear_pair(p: Polynomial, f: RationalFunction, g: RationalFunction) -> Tuple[Polynomial, Polynomial]:
    out = []
    for h in (f, g):
        v = h * p
        if not v.is_polynomial():
            raise NotDivisible(f"{h} is not in (1/p) R")
        out.append(v.as_polynomial())
    return tuple(out)


__all__ = [
    "HMGenerators", "CoxModule", "local_generators", "hm_via_intersection", "hm_via_hull", "hm_prime",
    "compute", "same_module", "membership_oracle", "groebner_member", "cox_module", "free_basis_module",
    "denominator_monomial", "scaling_profile", "clear_pair", "homogenize_pair",
]
