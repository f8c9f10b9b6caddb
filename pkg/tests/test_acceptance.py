"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every criterion is a function returning a JSON-serialisable report with an
``ok`` field.  Reports carry no timings, so criterion 10 can compare reruns
byte for byte.  Run ``python tests/test_acceptance.py`` for the bare summary.
"""

import json
import random
from fractions import Fraction
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from weildeco import linalg  # noqa: E402
from weildeco.decorations.core import (  # noqa: E402
    HM, DirectSum, Lambda2T_P4, LogOmega, Omega, Phi, RankOne, Tangent, hm_coeff, special_lift, tangent_coeff,
    tangent_lift_bound, tangent_witness,
)
from weildeco.decorations.harness import Sampler, axioms_check, default_primes  # noqa: E402
from weildeco.decorations.slices import closed_form, dual_bound, toric_slice_table  # noqa: E402
from weildeco.divisors import PrimeDivisor, WeilDivisor, ord_at  # noqa: E402
from weildeco.expr import format_ratfunc, parse_expression  # noqa: E402
from weildeco.gb import Submodule, equal_modules, local_freeness_probe, syzygies  # noqa: E402
from weildeco.hm import generators as hmgen  # noqa: E402
from weildeco.hm.monad import classical_decoration_spotcheck, monad_verify, residue_target  # noqa: E402
from weildeco.hm.udata import UData, classical_u  # noqa: E402
from weildeco.polynomial import Ring  # noqa: E402
from weildeco.ratfunc import RationalFunction  # noqa: E402
from weildeco.toric import builtin_fan  # noqa: E402

from conftest import U623, V623  # noqa: E402

SEED = 42
RESULTS = {}


def H(i):
    return PrimeDivisor.toric(i, "H")


def _u623():
    return UData.from_matrix(builtin_fan("A3"), U623)


def _random_matrix(rng, n):
    return [[0 if i == j else rng.randint(-2, 2) for j in range(n)] for i in range(n)]


# -- 1 ---------------------------------------------------------------------------

def criterion_1(seed=SEED):
    u = _u623()
    ring = Ring.affine(3)
    gens = hmgen.compute(u, "intersect")
    p = hmgen.denominator_monomial(ring)
    printed = Submodule(ring, 2, [hmgen.clear_pair(p, parse_expression(f, ring), parse_expression(g, ring))
                                  for f, g in V623])
    module_ok = equal_modules(gens.cleared, printed)
    x1, x2, x3 = ring.gens()
    sigma = (x3, x2 * x2 - ring.one(), -(x1 + x2 * x3))
    # the printed generators satisfy exactly the printed relation
    printed_syz = syzygies(printed)
    printed_ok = equal_modules(Submodule(ring, 3, printed_syz.matrix), Submodule(ring, 3, [sigma]))
    # our canonical generators differ by a change of basis: one relation whose
    # entries generate the same ideal as those of sigma
    pres = syzygies(gens.cleared)
    entries = [c for col in pres.matrix for c in col]
    ours_ok = len(pres.matrix) == 1 and equal_modules(Submodule(ring, 1, [(c,) for c in entries]),
                                                      Submodule(ring, 1, [(c,) for c in sigma]))
    rank, verdict = local_freeness_probe(pres, (0, 1, 0))
    ok = module_ok and printed_ok and ours_ok and rank == 0 and verdict == "not locally free"
    return {"ok": ok, "module_equal": module_ok, "printed_syzygy": printed_ok, "syzygy_ideal": ours_ok,
            "generators": gens.to_json()["gens"], "syzygies": [[str(c) for c in col] for col in pres.matrix],
            "probe": {"rank": rank, "verdict": verdict}}


# -- 2 ---------------------------------------------------------------------------

def criterion_2(seed=SEED):
    rep = monad_verify()
    return {"ok": rep["ok"], "checks": rep["checks"]}


# -- 3 ---------------------------------------------------------------------------

def _cross(u):
    t = time.perf_counter()
    same = hmgen.same_module(hmgen.hm_via_intersection(u), hmgen.hm_via_hull(u))
    return same, time.perf_counter() - t


def criterion_3(seed=SEED, timings=None):
    rng = random.Random(seed)
    instances = []
    for n in range(2, 6):
        instances.append((f"zero A{n}", UData.from_matrix(builtin_fan(f"A{n}"), [[0] * n] * n)))
    instances.append(("three-variable example", _u623()))
    for nu in range(5):
        instances.append((f"classical chart {nu}", classical_u().restrict_chart(nu)))
    for k in range(24):
        n = 3 if k % 2 == 0 else 4
        m = _random_matrix(rng, n)
        instances.append((f"random A{n} {m}", UData.from_matrix(builtin_fan(f"A{n}"), m)))
    rows = []
    for name, u in instances:
        same, dt = _cross(u)
        if timings is not None:
            timings.append(dt)
        rows.append({"instance": name, "equal": same})
    ok = all(r["equal"] for r in rows)
    return {"ok": ok, "instances": len(rows), "random": 24, "rows": rows}


# -- 4 ---------------------------------------------------------------------------

def criterion_4(seed=SEED):
    rows = []
    for n in range(1, 6):
        fan = builtin_fan(f"A{n}")
        ring = fan.torus_ring()
        u = UData.from_matrix(fan, [[0] * n] * n)
        basis = hmgen.free_basis_module(ring)
        eq = {m: equal_modules(hmgen.compute(u, m).cleared, basis) for m in ("intersect", "hull")}
        free = syzygies(basis).matrix == []
        rows.append({"n": n, "intersect": eq["intersect"], "hull": eq["hull"], "no_syzygies": free})
    ok = all(r["intersect"] and r["hull"] and r["no_syzygies"] for r in rows)
    return {"ok": ok, "rows": rows}


# -- 5 ---------------------------------------------------------------------------

def _decorations():
    p2, p3, p4, a3 = (builtin_fan(n) for n in ("P2", "P3", "P4", "A3"))
    x2 = p2.torus_ring()
    hs = {H(0): parse_expression("x1/x2", x2), H(1): parse_expression("x2", x2), H(2): parse_expression("-1", x2)}
    d1 = WeilDivisor.from_items([(H(1), 1), (H(0), -2)])
    return [
        ("RankOne P2", RankOne(d1, p2)),
        ("DirectSum P2", DirectSum((RankOne(d1, p2), RankOne(WeilDivisor.prime(H(2), 3), p2)))),
        ("Phi P2", Phi.of(hs, p2)),
        ("Omega P3", Omega(p3)),
        ("LogOmega P2", LogOmega(p2)),
        ("Tangent P3", Tangent(p3)),
        ("Lambda2T P4", Lambda2T_P4()),
        ("HM classical P4", HM(classical_u())),
        ("HM three-variable A3", HM(UData.from_matrix(a3, U623))),
        ("HM P2", HM(UData.from_matrix(p2, [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]))),
    ]


def criterion_5(seed=SEED, samples=500):
    rows = []
    for name, d in _decorations():
        fan = d.fan if hasattr(d, "fan") else d.parts[0].fan
        primes = default_primes(fan, fan.torus_ring())
        rep = axioms_check(d, primes, samples=samples, seed=seed).to_json()
        hyper = sum(1 for P in primes if not P.is_toric)
        rows.append({"decoration": name, "ok": rep["ok"], "primes": rep["primes"], "hypersurfaces": hyper,
                     "checks": rep["checks"], "counterexamples": rep["counterexamples"]})
    ok = all(r["ok"] and r["hypersurfaces"] >= 2 for r in rows)
    return {"ok": ok, "samples": samples, "rows": rows}


# -- 6 ---------------------------------------------------------------------------

def _laurent(rng, ring, lo=-2, hi=1):
    out = RationalFunction(ring.zero())
    for _ in range(rng.randint(0, 3)):
        e = [rng.randint(lo, hi) for _ in range(ring.nvars)]
        out = out + RationalFunction.laurent_monomial(ring, e, rng.choice((1, -1, 2)))
    return out


def _module_element(rng, gens, ring):
    f = g = RationalFunction(ring.zero())
    for a, b in gens.gens:
        c = _laurent(rng, ring, 0, 2)
        f, g = f + c * a, g + c * b
    return f, g


def criterion_6(seed=SEED, pairs=200):
    rng = random.Random(seed)
    instances = [("three-variable example", _u623()),
                 ("zero A3", UData.from_matrix(builtin_fan("A3"), [[0] * 3] * 3)),
                 ("classical chart 0", classical_u().restrict_chart(0)),
                 ("random A3", UData.from_matrix(builtin_fan("A3"), _random_matrix(rng, 3)))]
    rows = []
    for name, u in instances:
        ring = u.fan.torus_ring()
        gens = hmgen.compute(u)
        agree = members = 0
        bad = []
        for k in range(pairs):
            if k % 3 == 0:
                f, g = _module_element(rng, gens, ring)
                if rng.random() < 0.5:
                    f = f + _laurent(rng, ring, -2, 0)
            else:
                f, g = _laurent(rng, ring), _laurent(rng, ring)
            oracle, _ = hmgen.membership_oracle(u, f, g)
            gb = gens.contains_pair(f, g)
            members += oracle
            if oracle == gb:
                agree += 1
            elif len(bad) < 3:
                bad.append([format_ratfunc(f), format_ratfunc(g)])
        rows.append({"u": name, "pairs": pairs, "agree": agree, "members": members, "disagreements": bad})
    ok = all(r["agree"] == r["pairs"] and 0 < r["members"] < r["pairs"] for r in rows)
    return {"ok": ok, "rows": rows}


# -- 7 ---------------------------------------------------------------------------

def criterion_7(seed=SEED):
    rows = []
    for name in ("P2", "P3", "P4"):
        fan = builtin_fan(name)
        for kind in ("omega", "tangent"):
            table = toric_slice_table(kind, fan, bound=2)
            bad = [[list(e), r] for e, r, c in table.rows if c != closed_form(kind, fan, e, r)]
            rows.append({"fan": name, "kind": kind, "rows": len(table.rows), "mismatches": bad[:3]})
    zero_p2 = UData.from_matrix(builtin_fan("P2"), [[0] * 3] * 3)
    for label, u in (("three-variable example", _u623()), ("classical", classical_u()), ("zero P2", zero_p2)):
        table = toric_slice_table("hm", u.fan, u=u, bound=2)
        bad = [[list(e), r] for e, r, c in table.rows if c != closed_form("hm", u.fan, e, r, u=u)]
        rows.append({"fan": u.fan.name, "kind": f"hm {label}", "rows": len(table.rows), "mismatches": bad[:3]})
    return {"ok": all(not r["mismatches"] for r in rows), "tables": rows}


# -- 8 ---------------------------------------------------------------------------

def criterion_8(seed=SEED, per_fan=100):
    rows = []
    for name in ("P2", "P3"):
        fan = builtin_fan(name)
        ring = fan.torus_ring()
        s = Sampler.for_ring(ring, seed)
        rels = linalg.nullspace(linalg.transpose([r.vector for r in fan.rays]), len(fan.rays))
        om = Omega(fan)
        counts = {"pairs": 0, "lift_equal": 0, "lift_bound": 0, "dual_equal": 0, "dual_bound": 0}
        failures = []
        while counts["pairs"] < per_fan:
            a = s.vector(fan.dim)
            if all(x.is_zero() for x in a):
                continue
            r = fan.rays[counts["pairs"] % len(fan.rays)]
            P = PrimeDivisor.toric(r.id, fan.prefix)
            counts["pairs"] += 1
            exact = tangent_coeff(a, P, fan)
            eq = tangent_lift_bound(a, special_lift(a, P, fan), P, fan) == exact
            counts["lift_equal"] += eq
            lifts = [list(special_lift(a, P, fan, sig)) for sig in fan.cones_containing(r.id)]
            for _ in range(3):
                lift = list(special_lift(a, P, fan))
                for rel in rels:
                    c = s.element()
                    lift = [x + c * Fraction(k) for x, k in zip(lift, rel)]
                lifts.append(lift)
            lb = all(tangent_lift_bound(a, lift, P, fan) <= exact for lift in lifts)
            counts["lift_bound"] += lb
            w = tuple(RationalFunction.const(ring, x) for x in tangent_witness(a, P, fan))
            de = dual_bound(om, a, w, P) == exact
            counts["dual_equal"] += de
            ms = [s.vector(fan.dim) for _ in range(3)]
            db = all(dual_bound(om, a, m, P) >= exact for m in ms if not all(x.is_zero() for x in m))
            counts["dual_bound"] += db
            if not (eq and lb and de and db) and len(failures) < 3:
                failures.append({"a": [format_ratfunc(x) for x in a], "prime": str(P)})
        rows.append({"fan": name, "counts": counts, "failures": failures})
    ok = all(not r["failures"] and r["counts"]["pairs"] >= per_fan for r in rows)
    return {"ok": ok, "rows": rows}


# -- 9 ---------------------------------------------------------------------------

def criterion_9(seed=SEED):
    u = classical_u()
    fan = builtin_fan("P4")
    ring = Ring.cox(4)
    one = RationalFunction.const(ring, 1)
    residue = {str(nu): hm_coeff(u, residue_target(ring, nu), one, H(nu), fan) for nu in range(5)}
    ones = {str(nu): hm_coeff(u, one, one, H(nu), fan) for nu in range(5)}
    rng = random.Random(seed)
    z = ring.gens()
    torus = [PrimeDivisor.hypersurface(z[0] + z[1] + z[2] + z[3] + z[4]),
             PrimeDivisor.hypersurface(z[0] * z[1] - ring.const(2) * z[2] ** 2)]
    pool = [P.poly for P in torus] + [z[0] + z[1], z[2] - z[3]]
    torus_ok = 0
    for k in range(100):
        P = torus[k % 2]
        f, g = (_degree_zero(rng, ring, pool) for _ in range(2))
        expect = min(ord_at(f, P, fan), ord_at(g, P, fan))
        torus_ok += hm_coeff(u, f, g, P, fan) == expect
    spot = classical_decoration_spotcheck(samples=100, seed=seed)
    ok = (set(residue.values()) == {1} and set(ones.values()) == {0} and torus_ok == 100 and spot["ok"])
    return {"ok": ok, "residue_pairs": residue, "ones": ones, "torus_pairs": {"samples": 100, "pass": torus_ok},
            "spotcheck": spot}


def _degree_zero(rng, ring, pool):
    e = [rng.randint(-2, 2) for _ in range(ring.nvars)]
    f = RationalFunction.laurent_monomial(ring, e, rng.choice((1, -1, 3)))
    for p in rng.sample(pool, rng.choice((0, 1, 2))):
        f = f * RationalFunction(p) ** rng.choice((1, -1))
    d = f.degree()
    return f * RationalFunction.laurent_monomial(ring, [-d] + [0] * (ring.nvars - 1)) if d else f


# -- 10 --------------------------------------------------------------------------

CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}

TITLES = {
    1: "three-variable example reproduced",
    2: "monad identities",
    3: "hull and intersection methods agree",
    4: "u = 0 is free of rank two",
    5: "decoration axioms at 500 samples",
    6: "membership oracle matches Groebner membership",
    7: "toric slice formulas",
    8: "lift and dual bounds",
    9: "classical HM spot checks",
    10: "byte-identical reruns",
}

_FIRST_RUN = {}


def _dump(report):
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def _run(k):
    if k not in _FIRST_RUN:
        t = time.perf_counter()
        rep = CRITERIA[k]()
        _FIRST_RUN[k] = (rep, time.perf_counter() - t)
    return _FIRST_RUN[k]


def _record(k, ok, note=""):
    line = f"criterion {k:2d} [{'PASS' if ok else 'FAIL'}] {TITLES[k]}" + (f" ({note})" if note else "")
    RESULTS[k] = line
    print(line)


def test_criterion_1():
    rep, dt = _run(1)
    _record(1, rep["ok"] and dt < 10, f"{dt:.1f}s")
    assert rep["ok"], rep
    assert dt < 10


def test_criterion_2():
    rep, dt = _run(2)
    _record(2, rep["ok"] and dt < 1, f"{dt:.2f}s")
    assert rep["ok"], rep
    assert dt < 1


def test_criterion_3():
    timings = []
    t = time.perf_counter()
    rep = criterion_3(timings=timings)
    _FIRST_RUN[3] = (rep, time.perf_counter() - t)
    slowest = max(timings)
    _record(3, rep["ok"] and slowest < 60, f"{rep['instances']} instances, slowest {slowest:.1f}s")
    assert rep["ok"], [r for r in rep["rows"] if not r["equal"]]
    assert slowest < 60
    assert rep["random"] >= 20


def test_criterion_4():
    rep, _ = _run(4)
    _record(4, rep["ok"])
    assert rep["ok"], rep


def test_criterion_5():
    rep, dt = _run(5)
    failing = [r["decoration"] for r in rep["rows"] if not r["ok"]]
    _record(5, rep["ok"], f"{len(rep['rows'])} decorations" + (f", failing {failing}" if failing else ""))
    assert rep["ok"], [r for r in rep["rows"] if not r["ok"]]


def test_criterion_6():
    rep, _ = _run(6)
    _record(6, rep["ok"], ", ".join(f"{r['u']}: {r['agree']}/{r['pairs']}" for r in rep["rows"]))
    assert rep["ok"], rep


def test_criterion_7():
    rep, _ = _run(7)
    _record(7, rep["ok"], f"{sum(t['rows'] for t in rep['tables'])} rows")
    assert rep["ok"], rep


def test_criterion_8():
    rep, _ = _run(8)
    _record(8, rep["ok"], ", ".join(f"{r['fan']}: {r['counts']['pairs']} pairs" for r in rep["rows"]))
    assert rep["ok"], rep


def test_criterion_9():
    rep, _ = _run(9)
    _record(9, rep["ok"], f"{rep['spotcheck']['samples']} spot cases")
    assert rep["ok"], rep


def test_criterion_10():
    diffs = []
    for k, fn in CRITERIA.items():
        first = _dump(_run(k)[0])
        again = _dump(fn())
        if first != again:
            diffs.append(k)
    _record(10, not diffs, "all reports identical" if not diffs else f"differs for {diffs}")
    assert not diffs


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
