import re

CRITERIA = {
    1: "trace facts on Lambda'' and Lambda'",
    2: "intermediate ladder traces",
    3: "rho1 equals 1 off T",
    4: "main oscillation fact",
    5: "initial-segment fact",
    6: "e-table convention audit",
    7: "memoized vs memo-free oracle",
    8: "exhaustive order checks on 2^<=4",
    9: "cellular family at depth 5",
    10: "torus metric and band separation",
    11: "byte-identical reports",
}

_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.failed or (report.when == "call" and report.outcome != "passed"):
        _results[n] = "FAIL"
    elif report.when == "call":
        _results.setdefault(n, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        verdict = _results.get(n, "NOT RUN")
        terminalreporter.write_line(f"criterion {n:2d}: {verdict:7s} {label}")
