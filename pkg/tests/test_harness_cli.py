from __future__ import annotations

import json
import subprocess
import sys

import pytest

from semicomm import __version__
from semicomm.cli import main, parse_element_text
from semicomm.harness import (
    BRUTE,
    PUBLISHED,
    Check,
    Context,
    Outcome,
    Report,
    run_checks,
    suite_checks,
    verify,
    verify_bands,
    verify_schein,
    verify_tdia,
    verify_tdia2,
    verify_tdia3,
)
from semicomm.commgraph import BudgetExceeded
from semicomm.transform import Transformation


def test_run_checks_statuses():
    def boom(ctx):
        raise BudgetExceeded(10, 1, "test")
    checks = [
        Check("a", "equal", 3, PUBLISHED, lambda ctx: Outcome(3)),
        Check("b", "unequal", 3, PUBLISHED, lambda ctx: Outcome(4)),
        Check("c", "bound", 3, BRUTE, lambda ctx: Outcome(5), at_least=True),
        Check("d", "budget", 3, PUBLISHED, boom),
        Check("e", "inf bound", 5, PUBLISHED, lambda ctx: Outcome(float("inf")), at_least=True),
    ]
    res = run_checks(checks, Context())
    assert [r.status for r in res] == ["pass", "fail", "pass", "skipped", "pass"]
    assert res[2].expected == ">= 3" and res[4].computed == "inf"
    assert "budget" in res[3].note
    rep = Report(__version__, {}, res)
    assert not rep.ok and rep.counts() == {"pass": 3, "fail": 1, "skipped": 1}
    assert Report(__version__, {}, [res[0], res[3]]).ok


@pytest.mark.parametrize("fn, kw", [
    (verify_tdia, {"max_n": 4}),
    (verify_tdia2, {"max_n": 4}),
    (verify_tdia3, {"cases": [2, 3, 4, 5]}),
    (verify_bands, {"max_k": 2}),
])
def test_small_suites_pass(fn, kw):
    rep = fn(**kw)
    assert rep.ok and rep.counts()["fail"] == 0, rep.summary()


def test_schein_suite():
    rep = verify_schein()
    assert rep.ok, rep.summary()
    ids = [c.id for c in rep.checks]
    assert len(ids) == len(set(ids))
    fails = {c.id: c for c in rep.checks if c.computed is False}
    assert fails["schein.s0k2.A5"].witness == {"elements": ["a1", "a2", "b1", "b2", "e1"], "clause": 10}


def test_report_json_schema():
    rep = verify("tdia", max_n=3)
    d = json.loads(rep.to_json())
    assert set(d) == {"version", "schema", "config", "checks", "runtime"}
    c = d["checks"][0]
    assert {"id", "claim", "computed", "expected", "provenance", "status", "ms"} <= set(c)
    assert c["provenance"] in (PUBLISHED, BRUTE)
    assert "ms" not in json.loads(rep.to_json(timing=False))["checks"][0]


def test_reports_identical_across_threads():
    a = verify("all", max_n=4, max_k=2, threads=1)
    b = verify("all", max_n=4, max_k=2, threads=3)
    assert a.to_json(timing=False) == b.to_json(timing=False)


def test_suite_validation():
    with pytest.raises(ValueError):
        suite_checks("nope")
    with pytest.raises(ValueError):
        verify("tdia", max_n=9)
    with pytest.raises(ValueError):
        verify("tdia3", cases=[9])
    with pytest.raises(ValueError):
        verify("bands", max_k=1)


def test_tdia3_n8_is_skipped_not_failed():
    checks = {c.id: c for c in suite_checks("tdia3", cases=[8])}
    res = run_checks([checks["tdia3.n8.diameter"]], Context())
    assert res[0].status == "skipped" and "lower bound 5" in res[0].note


def test_parse_element_text():
    assert parse_element_text("[2,1,1]") == Transformation([2, 1, 1])
    assert parse_element_text("(* 4>(3 4 1>(1 2)", 5) == Transformation([2, 1, 4, 1, 4])
    with pytest.raises(Exception):
        parse_element_text("(* 4>(3 4 1>(1 2)")


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_diameter(capsys):
    code, out, _ = run_cli(capsys, "diameter", "full:4")
    assert code == 0 and out.splitlines()[0] == "4" and out.splitlines()[1].startswith("path: ")


def test_cli_diameter_disconnected(capsys):
    code, out, _ = run_cli(capsys, "diameter", "full:3")
    assert code == 0 and out.startswith("inf") and "no path between" in out


def test_cli_distance(capsys):
    code, out, _ = run_cli(capsys, "distance", "ideal:3:2", "[2,1,1]", "[3,1,1]")
    assert code == 0 and out.splitlines()[0] == "4"
    code, out, _ = run_cli(capsys, "distance", "teve4", "a", "c")
    assert code == 0 and out.splitlines() == ["2", "path: a - b - c"]


def test_cli_distance_written_form(capsys):
    code, out, _ = run_cli(capsys, "distance", "ideal:5:4", "(* 4>(3 4 1>(1 2)", "(* 1>(2 1 3>(3 4)")
    assert code == 0 and out.splitlines()[0] == "3"


def test_cli_knit_degree(capsys):
    code, out, _ = run_cli(capsys, "knit-degree", "s0:2")
    assert code == 0 and out.splitlines()[0] == "4"
    code, out, _ = run_cli(capsys, "knit-degree", "zeroband3")
    assert out.strip() == "absent"
    code, out, _ = run_cli(capsys, "knit-degree", "zeroband3", "--include-central")
    assert out.splitlines() == ["2", "l-path: e - 0 - f"]


def test_cli_check_an(capsys):
    code, out, _ = run_cli(capsys, "check-an", "s0:2", "5")
    assert code == 0
    assert out.strip() == "(A_5) fails; witness a1, a2, b1, b2, e1; violated clause 10"
    code, out, _ = run_cli(capsys, "check-an", "s0:2", "4", "--engine", "lpath")
    assert out.strip() == "(A_4) holds"


def test_cli_check_q1(capsys):
    code, out, _ = run_cli(capsys, "check-q1", "zeroband3")
    assert code == 0 and out.strip() == "(1) fails; witness 0, e, f; violated clause 2"


def test_cli_certificate(capsys):
    code, out, _ = run_cli(capsys, "certificate", "6", "[2,3,4,5,6,1]", "[2,3,5,1,2,4]")
    assert code == 0 and out.splitlines()[0] == "true"


def test_cli_construct(capsys):
    code, out, _ = run_cli(capsys, "construct", "s0:2")
    assert code == 0 and out.startswith("11 elements") and "c_s" in out
    code, out, _ = run_cli(capsys, "construct", "witness:tdia2:3:2")
    assert out.splitlines() == ["a = [2,1,1]", "b = [3,1,1]"]


def test_cli_export(capsys, tmp_path):
    p = tmp_path / "g.json"
    code, _, _ = run_cli(capsys, "export", "tald4", "-o", str(p))
    assert code == 0 and json.loads(p.read_text())["edges"] == [[0, 1], [1, 2], [2, 3]]
    code, out, _ = run_cli(capsys, "export", "tald4", "--format", "dot")
    assert out.startswith("graph G {")


def test_cli_verify(capsys, tmp_path):
    p = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "verify", "bands", "--max-k", "2", "--json", str(p))
    assert code == 0 and "0 failed" in out
    assert json.loads(p.read_text())["config"]["max_k"] == 2


@pytest.mark.parametrize("args", [
    ["diameter", "bogus"],
    ["distance", "ideal:3:2", "[1,2,3]", "[2,1,1]"],
    ["distance", "teve4", "zz", "a"],
    ["check-an", "teve4", "0"],
    ["check-an", "zeroband3", "3", "--engine", "lpath"],
    ["construct", "witness:nope"],
    ["diameter", "ideal:5:4", "--budget", "10"],
    ["verify", "tdia", "--max-n", "9"],
])
def test_cli_errors(capsys, args):
    code, _, err = run_cli(capsys, *args)
    assert code == 2 and err.startswith("error: ")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "semicomm.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
