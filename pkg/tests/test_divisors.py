import random

import pytest

from weildeco.divisors import (
    INF, PrimeDivisor, WeilDivisor, meet_join, ord_at, principal_divisor_on_support, ratio_residue_matches,
)
from weildeco.errors import HNotUnit, ZeroFunction
from weildeco.expr import parse_expression, parse_polynomial
from weildeco.polynomial import Ring, multiplicity
from weildeco.ratfunc import RationalFunction
from weildeco.toric import builtin_fan

A3 = builtin_fan("A3")
P4 = builtin_fan("P4")
R3 = Ring.affine(3)


def H(i):
    return PrimeDivisor.toric(i, "H")


def div(*pairs):
    return WeilDivisor.from_items((H(i), c) for i, c in pairs)


def F(src, ring=R3):
    return parse_expression(src, ring)


def test_meet_join_examples():
    d = div((0, 2), (1, -1))
    assert meet_join(d, div((0, 1))) == div((0, 1), (1, -1))
    assert d.meet(d) == d
    assert meet_join(div((0, 1)), div((1, 1)), "join") == div((0, 1), (1, 1))


def test_ord_examples():
    assert ord_at(F("x1^2/(x2*x3)"), H(1), A3) == 2
    p = PrimeDivisor.hypersurface(parse_polynomial("x1+x2", R3))
    assert ord_at(F("(x1+x2)^2*x3"), p) == 2
    assert ord_at(F("1/(x2*x3)+1/x1"), H(1), A3) == -1
    assert ord_at(RationalFunction(R3.zero()), H(1), A3) == INF


def test_principal_divisor_examples():
    support = [H(1), H(2), H(3)]
    assert principal_divisor_on_support(F("x1"), support, A3) == div((1, 1))
    assert principal_divisor_on_support(F("x1/x2"), [H(1), H(2)], A3) == div((1, 1), (2, -1))
    z = Ring.cox(4)
    f = parse_expression("z0*z2/(z3*z4)", z)
    toric = [H(i) for i in range(5)]
    assert principal_divisor_on_support(f, toric, P4) == div((0, 1), (2, 1), (3, -1), (4, -1))
    with pytest.raises(ZeroFunction):
        principal_divisor_on_support(RationalFunction(R3.zero()), support, A3)


def test_residue_examples():
    assert ratio_residue_matches(F("x2*x3 + x1"), F("1"), F("x2*x3"), H(1), A3)
    assert not ratio_residue_matches(F("1"), F("1"), F("x2"), H(1), A3)
    f = F("1/(x2*x3)+1/x1")
    g = F("1/x3+1/(x1*x2)")
    assert ratio_residue_matches(f, g, F("x2"), H(1), A3)


def test_residue_needs_unit():
    with pytest.raises(HNotUnit):
        ratio_residue_matches(F("1"), F("1"), F("x1"), H(1), A3)


def test_hypersurface_normalisation():
    a = PrimeDivisor.hypersurface(parse_polynomial("-2*x1 - 4*x2 + 6", R3))
    b = PrimeDivisor.hypersurface(parse_polynomial("x1 + 2*x2 - 3", R3))
    assert a == b
    with pytest.raises(ValueError):
        PrimeDivisor.hypersurface(parse_polynomial("x1*x2 + x1", R3))
    with pytest.raises(ValueError):
        PrimeDivisor.hypersurface(parse_polynomial("5", R3))


def test_divisor_json():
    d = div((1, 2), (0, -1))
    assert d.to_json() == [
        {"prime": {"kind": "toric", "data": 0, "name": "H0"}, "coeff": -1},
        {"prime": {"kind": "toric", "data": 1, "name": "H1"}, "coeff": 2},
    ]
    assert str(d) == "-H0 + 2H1"


# -- properties -------------------------------------------------------------------

POOL = ["x1+1", "x2-2", "x1*x2+3", "x1+x2+x3+1"]


def _random_rf(rng):
    num = R3.one().scale(rng.choice([1, -2, 3]))
    den = R3.one()
    for _ in range(rng.randint(0, 3)):
        q = parse_polynomial(rng.choice(POOL + ["x1", "x2", "x3"]), R3)
        if rng.random() < 0.5:
            num = num * q
        else:
            den = den * q
    if rng.random() < 0.3:
        num = num + parse_polynomial(rng.choice(["x1", "x2*x3", "1"]), R3)
    return RationalFunction(num, den)


def _primes():
    return [H(1), H(2), H(3)] + [PrimeDivisor.hypersurface(parse_polynomial(s, R3)) for s in POOL]


def test_ord_is_a_valuation():
    rng = random.Random(11)
    for _ in range(300):
        f, g = _random_rf(rng), _random_rf(rng)
        if f.is_zero() or g.is_zero():
            continue
        for P in _primes():
            of, og = ord_at(f, P, A3), ord_at(g, P, A3)
            assert ord_at(f * g, P, A3) == of + og
            s = ord_at(f + g, P, A3)
            assert s >= min(of, og)
            if of != og:
                assert s == min(of, og)


def test_toric_ord_agrees_with_multiplicity():
    rng = random.Random(12)
    for _ in range(200):
        f = _random_rf(rng)
        if f.is_zero():
            continue
        for i in range(1, 4):
            xi = R3.gens()[i - 1]
            assert ord_at(f, H(i), A3) == multiplicity(f.num, xi) - multiplicity(f.den, xi)


def test_meet_join_lattice():
    rng = random.Random(13)
    for _ in range(200):
        a, b = (div(*[(i, rng.randint(-3, 3)) for i in range(4)]) for _ in range(2))
        assert a.meet(b) == b.meet(a) and a.join(b) == b.join(a)
        assert a.meet(a.join(b)) == a
        assert a.join(a.meet(b)) == a
        assert a.meet(b) <= a <= a.join(b)


def test_residue_depends_only_on_ratio():
    rng = random.Random(14)
    hs = [F("x2"), F("x2*x3"), F("-1"), F("x2/x3")]
    hits = 0
    for _ in range(200):
        f, g = _random_rf(rng), _random_rf(rng)
        lam = _random_rf(rng)
        if lam.is_zero():
            continue
        h = rng.choice(hs)
        if rng.random() < 0.4:
            f = h * g + F("x1") * _random_rf(rng)
        ok = ratio_residue_matches(f, g, h, H(1), A3)
        hits += ok
        assert ratio_residue_matches(lam * f, lam * g, h, H(1), A3) == ok
    assert hits > 0
