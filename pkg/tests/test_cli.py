import json
import subprocess
import sys

import pytest

from weildeco.cli import main

U623 = "[[0,1,0],[1,0,-1],[0,-1,0]]"


def run(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_monad_verify(capsys):
    code, out = run(capsys, "monad", "verify")
    assert code == 0 and out["status"] == "ok"
    assert len(out["checks"]) == 4


def test_hm_gens_both(capsys):
    code, out = run(capsys, "hm", "gens", "--fan", "A3", "--u", U623, "--method", "both",
                    "--syzygies", "--probe", "0,1,0")
    assert code == 0
    assert out["methods_agree"] and out["count"] == 3
    assert len(out["syzygies"]) == 1
    assert out["probe"] == {"point": [0, 1, 0], "rank": 0, "verdict": "not locally free"}


def test_deco_eval_classical(capsys):
    code, out = run(capsys, "deco", "eval", "--kind", "hm", "--fan", "P4", "--u", "classical",
                    "--element", '["z0*z2/(z3*z4)","1"]', "--prime", "H1")
    assert code == 0 and out["coeff"] == 1


def test_deco_eval_hypersurface(capsys):
    code, out = run(capsys, "deco", "eval", "--kind", "omega", "--fan", "P2",
                    "--element", '["x1+1","0"]', "--prime", "x1+1")
    assert code == 0 and out["coeff"] == 1


def test_deco_axioms(capsys):
    code, out = run(capsys, "--samples", "30", "deco", "axioms", "--kind", "tangent", "--fan", "P2")
    assert code == 0 and out["ok"] and out["samples"] == 30


def test_deco_slice(capsys):
    code, out = run(capsys, "deco", "slice", "--kind", "omega", "--fan", "P2", "--ray", "1", "--bound", "1")
    assert code == 0
    assert [f["level"] for f in out["filtration"]] == [-1, 0, 1]


def test_hm_member(capsys):
    code, out = run(capsys, "hm", "member", "--fan", "A3", "--u", U623, "--element", '["1/x1^2","1/x1^2"]')
    assert code == 0
    assert out["member"] is False and out["groebner_member"] is False
    assert out["certificate"]["coefficients"]["H1"] == -2


def test_fan_show(capsys):
    code, out = run(capsys, "fan", "show", "--fan", "P2")
    assert code == 0 and out["validation"]["ok"]
    bad = '{"dim": 2, "rays": [[0,1],[2,-1]], "cones": [[0,1]]}'
    code, out = run(capsys, "fan", "show", "--fan", bad)
    assert code == 1 and not out["validation"]["ok"]


def test_u_validate(capsys):
    code, _ = run(capsys, "u", "validate", "--fan", "P4", "--u", "classical")
    assert code == 0
    code, out = run(capsys, "u", "validate", "--fan", "A2", "--u", "[[1,0],[0,0]]")
    assert code == 1 and out["validation"]["violations"]


def test_domain_errors_are_fail_reports(capsys):
    code, out = run(capsys, "deco", "eval", "--kind", "omega", "--fan", "P2", "--element", '["x1+","1"]',
                    "--prime", "H1")
    assert code == 1 and out["error"] == "ExprSyntaxError"
    code, out = run(capsys, "fan", "show", "--fan", "Grassmannian")
    assert code == 1 and out["error"] == "UnknownName"


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_human_output(capsys):
    assert main(["monad", "verify"]) == 0
    text = capsys.readouterr().out
    assert "[ok  ] B0^T Phi A0 = Id5" in text


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0
    assert all(c["ok"] for c in out["checks"])


def test_json_is_reproducible(capsys):
    argv = ["--seed", "5", "--samples", "20", "deco", "axioms", "--kind", "hm", "--fan", "P4", "--u", "classical"]
    main(["--json", *argv])
    first = capsys.readouterr().out
    main(["--json", "--threads", "2", *argv])
    assert capsys.readouterr().out == first


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "weildeco.cli", "--json", "monad", "verify"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "ok"
