import json

import numpy as np
from click.testing import CliRunner

from instmonad import thooft
from instmonad.cli import main
from instmonad.field import PrimeField, select_prime
from instmonad.report import (CheckRecord, VerificationReport, FAIL, PASS,
                              SKIPPED)


def _report():
    rep = VerificationReport(command="demo", n=1, k=2, prime=17, seed=0)
    rep.check("A1", "claim one", 4, 4)
    rep.check("A2", "claim two", True, True)
    return rep


def test_verdict_and_exit_code():
    rep = _report()
    assert rep.verdict == PASS and rep.exit_code == 0
    rep.check("A3", "claim three", 1, 2)
    assert rep.verdict == FAIL and rep.exit_code == 1


def test_skipped_does_not_fail():
    rep = _report()
    rep.add(CheckRecord(id="A0", claim="not applicable", status=SKIPPED))
    assert rep.verdict == PASS


def test_json_deterministic_and_sorted():
    a = _report().to_json()
    b = _report().to_json()
    assert a == b
    data = json.loads(a)
    ids = [c["id"] for c in data["checks"]]
    assert ids == sorted(ids)
    assert "runtime_ms" not in data["checks"][0]
    timed = json.loads(_report().to_json(include_timings=True))
    assert "runtime_ms" in timed["checks"][0]


def test_markdown_has_one_row_per_check():
    md = _report().to_markdown()
    assert md.count("| A") == 2
    assert "verdict" in md


def test_cli_report_command():
    runner = CliRunner()
    res = runner.invoke(main, ["report", "--n", "2", "--k", "9"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["profile"]["thooft_dim"] == 106
    assert data["euclid"]["total"] == data["euclid"]["closed_form"]


def test_cli_thooft_verify_passes():
    runner = CliRunner()
    res = runner.invoke(main, ["thooft", "verify", "--n", "1", "--k", "2"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["verdict"] == "pass"
    assert any(c["status"] == "skipped" for c in data["checks"])


def test_cli_rs_epsilon_passes():
    runner = CliRunner()
    res = runner.invoke(main, ["rs", "epsilon", "--n", "2", "--k", "3"])
    assert res.exit_code == 0
    assert json.loads(res.output)["verdict"] == "pass"


def test_cli_splitting_rs_distinguished_line():
    runner = CliRunner()
    res = runner.invoke(main, ["splitting", "--family", "rs", "--n", "1",
                               "--k", "2", "--lines", "5"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    by_id = {c["id"]: c for c in data["checks"]}
    assert by_id["S03-distinguished-corank"]["observed"] == 2
    assert by_id["S04-distinguished-jump"]["observed"] == 2


def test_cli_exit_code_on_failing_input(tmp_path):
    # a zero matrix cannot have rank k anywhere: the rank check must fail
    F = PrimeField(select_prime())
    n, k = 1, 2
    d = thooft.ThooftDatum(
        n=n, k=k,
        a=F.zeros((k, n + k)),
        l=F.zeros((n + k, 2 * n + 2)),
        lprime=F.zeros((n + k, 2 * n + 2)))
    path = tmp_path / "degenerate.json"
    path.write_text(thooft.dumps(d))
    runner = CliRunner()
    res = runner.invoke(main, ["thooft", "verify", "--n", "1", "--k", "2",
                               "--input", str(path)])
    assert res.exit_code == 1
    assert json.loads(res.output)["verdict"] == "fail"


def test_cli_output_reproducible():
    runner = CliRunner()
    out = [runner.invoke(main, ["rs", "verify", "--n", "1", "--k", "2",
                                "--trials", "5", "--seed", "3"]).output
           for _ in range(2)]
    assert out[0] == out[1]
