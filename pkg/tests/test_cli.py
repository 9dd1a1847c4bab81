import csv
import io
import json
import subprocess
import sys

import pytest

from ordwalks.cli import main
from ordwalks.report import ANCHORS, Report, render_report
from ordwalks.suites import run_explore, run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_walk_trace_json(capsys):
    code, out, _ = run(capsys, "walk", "trace", "--alpha", "w^3", "--beta", "w^3+w*8")
    assert code == 0
    data = json.loads(out)
    assert data["result"] == ["0", "30", "90", "200"]
    assert data["convention"] == "half_open"
    assert set(data) == {"query", "result", "convention", "depth"}


def test_walk_rho1_modes(capsys):
    _, out, _ = run(capsys, "walk", "rho1", "--alpha", "30", "--beta", "w^2+w*9")
    assert json.loads(out)["result"] == 17
    _, out, _ = run(capsys, "walk", "rho1", "--alpha", "30", "--beta", "w^2+w*9", "--mode", "closed")
    assert json.loads(out)["result"] == 18


def test_walk_osc(capsys):
    _, out, _ = run(capsys, "walk", "osc", "--alpha", "w^2+w*9", "--beta", "w^3+w*8")
    res = json.loads(out)["result"]
    assert {"30", "200"} <= set(res["set"]) and res["osc"] == len(res["set"])


@pytest.mark.parametrize("argv", [
    ["walk", "trace", "--alpha", "w*8+w^3", "--beta", "w^4"],
    ["walk", "trace", "--alpha", "w^10", "--beta", "w^4"],
    ["walk", "trace", "--alpha", "w^4", "--beta", "w^3"],
    ["walk", "osc", "--alpha", "w", "--beta", "w"],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "facts", "--samples", "0"],
    ["order", "check", "--depth", "40"],
    ["explore", "--kind", "osc-histogram", "--samples", "5", "--row-cap", "3"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_verify_facts(capsys):
    code, out, _ = run(capsys, "walk", "verify-facts", "--samples", "20", "--seed", "1")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and data["suite"] == "facts"
    ids = [e["check_id"] for e in data["entries"]]
    assert ids == sorted(ids)
    assert all(e["anchor"] == ANCHORS[e["check_id"]] for e in data["entries"])
    assert all("runtime_ms" not in e for e in data["entries"])


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "order", "check", "--depth", "3")
    assert json.loads(out)["passed"]
    _, out, _ = run(capsys, "verify", "--suite", "order", "--depth", "3", "--timings")
    assert all("runtime_ms" in e for e in json.loads(out)["entries"])


def test_order_cellular(capsys):
    code, out, _ = run(capsys, "order", "cellular", "--depth", "5")
    assert code == 0 and json.loads(out)["size"] == 7


def test_lspace_eval(capsys):
    code, out, _ = run(capsys, "lspace", "eval", "--beta", "w^3+w*8", "--coords", "w^2+w*9,w^4,w^3")
    assert code == 0
    coords = {c["xi"]: c for c in json.loads(out)["coords"]}
    assert coords["w^4"]["exponent"] == 0
    assert coords["w^2+w*9"]["exponent"] >= 3


def test_lspace_separate(capsys):
    code, out, _ = run(capsys, "lspace", "separate", "--seed", "42")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "yes"
    for key in ("c", "s1", "s2", "eps", "bands", "band_checks"):
        assert key in data


def test_lspace_separate_too_small(capsys):
    code, out, _ = run(capsys, "lspace", "separate", "--pairs", "5")
    assert code == 1 and "error" in json.loads(out)


def test_explore_e_table_csv(capsys):
    code, out, _ = run(capsys, "explore", "--kind", "e-table", "--format", "csv", "--betas", "w^3+w*8")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["agrees"] for r in rows] == ["yes", "yes", "yes", "yes", "no", "no"]
    assert rows[4]["half_open"] == "61" and rows[4]["closed"] == "62" and rows[4]["tabulated"] == "62"


def test_explore_osc_histogram(capsys, tmp_path):
    path = tmp_path / "osc.csv"
    code, _, _ = run(capsys, "explore", "--kind", "osc-histogram", "--samples", "500", "--format", "csv",
                     "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "alpha,beta,osc" and len(lines) == 501


def test_explore_empty_range(capsys):
    _, out, _ = run(capsys, "explore", "--kind", "osc-histogram", "--samples", "0", "--format", "csv")
    assert out == "alpha,beta,osc\n"
    header, rows = run_explore("e-table", xis=[])
    assert rows == [] and header[0] == "beta"


def test_table_format(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "order", "--depth", "3", "--format", "table")
    assert out.startswith("suite=order")
    _, out, _ = run(capsys, "verify", "--suite", "order", "--depth", "3", "--format", "csv")
    assert out.splitlines()[0] == "check_id,anchor,verdict,witness"


def test_report_unknown_check():
    with pytest.raises(KeyError):
        Report("x", "half_open", 0).add("no.such", True)
    with pytest.raises(ValueError):
        render_report(Report("x", "half_open", 0), "xml")


def test_failure_exit_code(capsys, monkeypatch):
    import ordwalks.suites as suites

    monkeypatch.setattr(suites, "TRACE_X", ())
    code, out, _ = run(capsys, "walk", "verify-facts", "--samples", "5")
    assert code == 1
    failed = {e["check_id"] for e in json.loads(out)["entries"] if e["verdict"] != "pass"}
    assert failed == {"facts.trace_x"}


def test_corrupted_sequence_localizes_failures(monkeypatch):
    import ordwalks.walks as walks
    from ordwalks.csequence import OrdinalSet, c_of
    from ordwalks.ordinal import nat

    def corrupted(alpha):
        s = c_of(alpha)
        if alpha.is_finite:
            return s
        return OrdinalSet(tuple(x for x in s.finite if x != nat(90)), s.ladders)

    orig = walks.WalkOracle.__init__

    def init(self, provider=corrupted, mode="half_open"):
        orig(self, corrupted, mode)

    monkeypatch.setattr(walks.WalkOracle, "__init__", init)
    rep = run_verify("facts", 10, 0)
    failed = {e.check_id for e in rep.entries if e.verdict != "pass"}
    assert "facts.trace_x" in failed and "facts.osc" in failed
    assert "csequence.f_table" not in failed and "facts.rho1" not in failed


def test_byte_identical_reports(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        subprocess.run([sys.executable, "-m", "ordwalks", "verify", "--suite", "all", "--samples", "20",
                        "--seed", "9", "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
