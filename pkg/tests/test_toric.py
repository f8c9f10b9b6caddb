import random

import pytest

from weildeco.errors import DimensionMismatch, NotSmooth, UnknownName
from weildeco.divisors import PrimeDivisor, WeilDivisor
from weildeco.toric import (
    Fan, builtin_fan, character_divisor, dual_basis, fan_from_json, is_smooth, pairing, validate_fan,
)

P2_EXPLICIT = Fan.from_data(2, [(1, 0), (0, 1), (-1, -1)], [[1, 2], [2, 3], [3, 1]], ids=[1, 2, 3], name="P2e")


def D(i, c=1, prefix="D"):
    return WeilDivisor.prime(PrimeDivisor.toric(i, prefix), c)


def test_validate_p2():
    assert validate_fan(P2_EXPLICIT)["ok"]
    assert validate_fan(builtin_fan("P2"))["ok"]


def test_validate_nonspanning():
    rep = validate_fan(Fan.from_data(2, [(1, 0)], [[0]]))
    assert not rep["ok"]
    assert any("span" in v for v in rep["violations"])


def test_validate_singular_cone():
    rep = validate_fan(Fan.from_data(2, [(0, 1), (2, -1)], [[0, 1]]))
    assert not rep["ok"]
    assert any("smooth" in v or "det" in v for v in rep["violations"])


def test_character_divisor_p2():
    assert character_divisor(P2_EXPLICIT, (1, 0)) == D(1) - D(3)
    assert character_divisor(P2_EXPLICIT, (0, 0)).is_zero()


def test_character_divisor_p4():
    fan = builtin_fan("P4")
    expected = WeilDivisor.from_items([(PrimeDivisor.toric(i, "H"), 1) for i in range(1, 5)]
                                      + [(PrimeDivisor.toric(0, "H"), -4)])
    assert character_divisor(fan, (1, 1, 1, 1)) == expected


def test_character_divisor_dimension():
    with pytest.raises(DimensionMismatch):
        character_divisor(builtin_fan("P2"), (1, 0, 0))


def test_dual_basis_examples():
    fan = Fan.from_data(2, [(1, 0), (0, 1)], [[0, 1]])
    assert [d.m for d in dual_basis(fan, 0)] == [(1, 0), (0, 1)]
    fan = Fan.from_data(2, [(1, 0), (1, 1)], [[0, 1]])
    duals = {d.rho: d.m for d in dual_basis(fan, 0)}
    assert duals == {0: (1, -1), 1: (0, 1)}
    p4 = builtin_fan("P4")
    sigma = p4.cones.index((1, 2, 3, 4))
    assert sorted(d.m for d in dual_basis(p4, sigma)) == sorted(
        tuple(int(i == k) for i in range(4)) for k in range(4))


def test_dual_basis_singular():
    fan = Fan.from_data(2, [(0, 1), (2, -1)], [[0, 1]])
    with pytest.raises(NotSmooth):
        dual_basis(fan, 0)


def test_builtin_fans():
    p4 = builtin_fan("projective(4)")
    assert len(p4.rays) == 5 and len(p4.cones) == 5
    a3 = builtin_fan("affine(3)")
    assert len(a3.rays) == 3 and len(a3.cones) == 1
    q = builtin_fan("P1xP1")
    assert sorted(r.vector for r in q.rays) == sorted([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert len(q.cones) == 4
    assert builtin_fan("P1^2") == q
    with pytest.raises(UnknownName):
        builtin_fan("Grassmannian")


def test_fan_json_roundtrip():
    fan = builtin_fan("P3")
    data = {"dim": 3, "rays": [list(r.vector) for r in fan.rays], "cones": [list(c) for c in fan.cones]}
    back = fan_from_json(data)
    assert back == fan


@pytest.mark.parametrize("name", ["P1", "P2", "P3", "P4", "A2", "A4", "P1xP1", "P1^3"])
def test_builtins_are_smooth_and_dual_bases_are_dual(name):
    fan = builtin_fan(name)
    assert is_smooth(fan)
    for s, cone in enumerate(fan.cones):
        for d in dual_basis(fan, s):
            for rid in cone:
                assert pairing(d.m, fan.ray(rid).vector) == int(rid == d.rho)


def test_character_divisor_linear():
    rng = random.Random(5)
    fan = builtin_fan("P3")
    for _ in range(50):
        m1 = [rng.randint(-5, 5) for _ in range(3)]
        m2 = [rng.randint(-5, 5) for _ in range(3)]
        k = rng.randint(-3, 3)
        lhs = character_divisor(fan, [a + k * b for a, b in zip(m1, m2)])
        assert lhs == character_divisor(fan, m1) + k * character_divisor(fan, m2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_projective_pairings_sum_to_zero(n):
    fan = builtin_fan(f"P{n}")
    rng = random.Random(n)
    for _ in range(20):
        m = [rng.randint(-9, 9) for _ in range(n)]
        assert sum(c for _, c in character_divisor(fan, m).items()) == 0
