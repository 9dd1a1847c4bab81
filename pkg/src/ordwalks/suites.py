"""Batch verification suites and exploration artifacts driven by the CLI."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import lspace, souslin
from .csequence import f_set, validate_csequence
from .ordinal import OMEGA_SQ, Ordinal, add, in_X, in_Y, nat, omega_times, parse_cnf
from .report import Report
from .sampling import (
    initial_segment_pairs,
    lambda1_points,
    lambda2_points,
    random_non_t,
    random_ordinal,
    random_pair,
    sample_distinct,
    separation_pairs,
    special_triples,
)
from .walks import HALF_OPEN, WalkOracle, check_trace_additivity, naive_lower_trace, naive_rho1

SUITES = ("facts", "order", "separation", "all")

TRACE_X = tuple(nat(n) for n in (0, 30, 90, 200))
TRACE_Y = tuple(nat(n) for n in (0, 10, 40, 90, 200))
LADDER_TRACES = {
    2: tuple(nat(n) for n in (200,)),
    4: tuple(nat(n) for n in (90, 200)),
    6: tuple(nat(n) for n in (30, 90, 200)),
}
THOUSAND = nat(1000)

# e-values tabulated for the omega*8 (X) and omega*9 (Y) ladders, per xi.
TABULATED_E = {
    "x": {0: 0, 10: 9, 30: 10, 40: 11, 90: 62, 200: 63},
    "y": {0: 0, 10: 6, 30: 18, 40: 28, 90: 29, 200: 129},
}
E_TABLE_XI = (0, 10, 30, 40, 90, 200)


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t0) * 1000


def _guarded(fn):
    # a broken provider should fail the checks that use it, not abort the suite
    try:
        return fn()
    except (LookupError, ValueError) as exc:
        return False, {"error": f"{type(exc).__name__}: {exc}"}


def _first(items, n=3):
    return [[str(x) for x in item] if isinstance(item, tuple) else str(item) for item in items[:n]]


def _strs(seq):
    return [str(x) for x in seq]


def comparison_pattern(oracle: WalkOracle, y: Ordinal, x: Ordinal, yp: Ordinal) -> dict:
    """The e-value inequalities that put {30,200} in Osc(y,x) and {10,90} in Osc(x,y')."""
    e = lambda beta, k: oracle.e_value(beta, nat(k))  # noqa: E731
    return {
        "e_y(0)=e_x(0)": e(y, 0) == e(x, 0),
        "e_y(30)>e_x(30)": e(y, 30) > e(x, 30),
        "e_y(90)<=e_x(90)": e(y, 90) <= e(x, 90),
        "e_y(200)>e_x(200)": e(y, 200) > e(x, 200),
        "e_x(10)>e_y'(10)": e(x, 10) > e(yp, 10),
        "e_x(40)<=e_y'(40)": e(x, 40) <= e(yp, 40),
        "e_x(90)>e_y'(90)": e(x, 90) > e(yp, 90),
    }


def e_table_rows(betas=None, xis=E_TABLE_XI, mode: str = HALF_OPEN, row_cap: int = 100_000) -> list:
    """Rows (beta, xi, half_open, closed, tabulated, agrees) for each beta and xi <= beta."""
    if betas is None:
        betas = [parse_cnf("w^3+w*8"), parse_cnf("w^2+w*9")]
    half, closed = WalkOracle(mode="half_open"), WalkOracle(mode="closed")
    rows = []
    for beta in betas:
        kind = "x" if in_X(beta) else "y" if in_Y(beta) else None
        for xi in xis:
            xi_o = xi if isinstance(xi, Ordinal) else nat(xi)
            if xi_o > beta:
                continue
            if len(rows) >= row_cap:
                raise ValueError(f"e-table exceeds row cap {row_cap}")
            h, c = half.e_value(beta, xi_o), closed.e_value(beta, xi_o)
            tab = TABULATED_E[kind].get(int(xi_o)) if kind and xi_o.is_finite else None
            mine = h if mode == HALF_OPEN else c
            agrees = "" if tab is None else ("yes" if mine == tab else "no")
            rows.append([str(beta), str(xi_o), h, c, "" if tab is None else tab, agrees])
    return rows


E_TABLE_HEADER = ["beta", "xi", "half_open", "closed", "tabulated", "agrees"]
OSC_HEADER = ["alpha", "beta", "osc"]


def osc_rows(samples: int, seed: int, mode: str = HALF_OPEN, row_cap: int = 100_000) -> list:
    if samples > row_cap:
        raise ValueError(f"{samples} rows exceeds row cap {row_cap}")
    rng = random.Random(seed)
    oracle = WalkOracle(mode=mode)
    rows = []
    while len(rows) < samples:
        a, b = random_pair(rng)
        if a < b:
            rows.append([str(a), str(b), oracle.osc(a, b)])
    return rows


def run_explore(kind: str, samples: int = 500, seed: int = 0, mode: str = HALF_OPEN, betas=None, xis=None,
                row_cap: int = 100_000):
    """(header, rows) for an exploration artifact."""
    if kind == "e-table":
        return E_TABLE_HEADER, e_table_rows(betas, E_TABLE_XI if xis is None else xis, mode, row_cap)
    if kind == "osc-histogram":
        return OSC_HEADER, osc_rows(samples, seed, mode, row_cap)
    raise ValueError(f"unknown exploration {kind!r}")


# --- suites -------------------------------------------------------------------

def _facts(report: Report, samples: int, seed: int, mode: str) -> None:
    rng = random.Random(seed)
    oracle = WalkOracle(mode=mode)

    def axioms():
        alphas = [add(d, omega_times(k)) for d in (OMEGA_SQ, parse_cnf("w^3"), parse_cnf("w^3+w^2")) for k in range(1, 10)]
        alphas += [nat(1), nat(7)] + [random_ordinal(rng) for _ in range(samples)]
        bad = [c for c in validate_csequence(alphas) if not c.passed]
        return not bad, {"alphas": len(alphas), "failures": [[str(c.alpha), c.axiom, c.detail] for c in bad[:5]]}

    def f_table():
        f2 = [int(x) for x in f_set(2).finite]
        ok = f2 == [*range(2, 11), 30, *range(40, 91), 200] and not f_set(8).finite and len(f_set(1).finite) == 129
        return ok, {"|F1|": len(f_set(1).finite), "|F2|": len(f2)}

    def rho1_fact():
        bad, n = [], 5 * samples
        for _ in range(n):
            beta = random_non_t(rng)
            top = min(int(beta), 1000) if beta.is_finite else 1000
            k = nat(rng.randint(1, top - 1))
            if oracle.rho1(k, beta) != 1:
                bad.append((k, beta))
        return not bad, {"pairs": n, "counterexamples": _first(bad)}

    deltas2 = sample_distinct(rng, lambda2_points(), max(samples, 100))
    deltas1 = sample_distinct(rng, lambda1_points(), max(samples, 100))

    def trace_x():
        bad = [d for d in deltas2 if oracle.lower_trace(d, add(d, omega_times(8))) != TRACE_X]
        return not bad, {"deltas": len(deltas2), "counterexamples": _first(bad)}

    def trace_y():
        bad = [d for d in deltas1 if oracle.lower_trace(d, add(d, omega_times(9))) != TRACE_Y]
        return not bad, {"deltas": len(deltas1), "counterexamples": _first(bad)}

    def ladder():
        bad = [(d, k) for d in deltas2 for k, want in LADDER_TRACES.items()
               if oracle.lower_trace(d, add(d, omega_times(k))) != want]
        return not bad, {"deltas": len(deltas2), "counterexamples": _first(bad)}

    def initial():
        pairs = initial_segment_pairs(rng, max(samples, 100))
        bad = []
        for xi, d in pairs:
            for k in (8, 9):
                top = add(d, omega_times(k))
                low = tuple(t for t in oracle.lower_trace(xi, top) if t < THOUSAND)
                if oracle.lower_trace(d, top) != low:
                    bad.append((xi, d, nat(k)))
        return not bad, {"pairs": len(pairs), "counterexamples": _first(bad)}

    triples = special_triples(rng, max(samples, 100))

    def osc_fact():
        bad = []
        want_yx, want_xy = {nat(30), nat(200)}, {nat(10), nat(90)}
        for y, x, yp in triples:
            if not (want_yx <= set(oracle.osc_set(y, x)) and want_xy <= set(oracle.osc_set(x, yp))):
                bad.append((y, x, yp))
        return not bad, {"triples": len(triples), "counterexamples": _first(bad)}

    def special_pairs():
        bad = []
        for y, x, yp in triples:
            for a, b in ((y, x), (x, yp)):
                if sum(1 for t in oracle.osc_set(a, b) if t.is_finite) < 2:
                    bad.append((a, b))
        return not bad, {"pairs": 2 * len(triples), "counterexamples": _first(bad)}

    def pattern():
        bad = []
        for y, x, yp in triples:
            failed = [k for k, v in comparison_pattern(oracle, y, x, yp).items() if not v]
            if failed:
                bad.append([str(y), str(x), str(yp), failed])
        return not bad, {"triples": len(triples), "counterexamples": bad[:3]}

    def e_table():
        rows = e_table_rows(mode=HALF_OPEN)
        agree = {(r[0], r[1]) for r in rows if r[5] == "yes"}
        expect = {("w^3+w*8", "0"), ("w^3+w*8", "10"), ("w^3+w*8", "30"), ("w^3+w*8", "40"),
                  ("w^2+w*9", "0"), ("w^2+w*9", "10"), ("w^2+w*9", "200")}
        deviations = [{"beta": r[0], "xi": r[1], "half_open": r[2], "closed": r[3], "tabulated": r[4]}
                      for r in rows if r[5] == "no"]
        return expect <= agree, {"agreeing": sorted(agree), "deviations": deviations}

    def additivity():
        bad, n, nontrivial = [], 0, 0
        while n < samples:
            a, b, g = sorted(random_ordinal(rng) for _ in range(3))
            n += 1
            lab, lbg = oracle.lower_trace(a, b), oracle.lower_trace(b, g)
            nontrivial += bool(lab and lbg and lbg[-1] < lab[0])
            if not check_trace_additivity(a, b, g, oracle):
                bad.append((a, b, g))
        # (xi, delta, delta + w*k) puts the split point on a Lambda' ordinal
        for xi, d in initial_segment_pairs(rng, samples):
            for k in (2, 8, 9):
                g = add(d, omega_times(k))
                n += 1
                lab, lbg = oracle.lower_trace(xi, d), oracle.lower_trace(d, g)
                nontrivial += bool(lab and lbg and lbg[-1] < lab[0])
                if not check_trace_additivity(xi, d, g, oracle):
                    bad.append((xi, d, g))
        return not bad, {"triples": n, "nontrivial": nontrivial, "counterexamples": _first(bad)}

    def memo_oracle():
        bad = []
        for _ in range(samples):
            a, b = random_pair(rng)
            if oracle.lower_trace(a, b) != naive_lower_trace(a, b) or oracle.rho1(a, b) != naive_rho1(a, b, mode=mode):
                bad.append((a, b))
        return not bad, {"queries": samples, "counterexamples": _first(bad)}

    for cid, fn in (("csequence.axioms", axioms), ("csequence.f_table", f_table), ("facts.rho1", rho1_fact),
                    ("facts.trace_x", trace_x), ("facts.trace_y", trace_y), ("facts.ladder", ladder),
                    ("facts.initial", initial), ("facts.osc", osc_fact), ("facts.special_pairs", special_pairs),
                    ("facts.pattern", pattern), ("facts.e_table", e_table), ("facts.additivity", additivity),
                    ("facts.oracle", memo_oracle)):
        (ok, witness), ms = _timed(lambda: _guarded(fn))
        report.add(cid, ok, witness, ms)


def _order(report: Report, depth: int) -> None:
    rep, ms = _timed(lambda: souslin.check_order(depth))
    for name, (ok, witness) in rep.checks.items():
        report.add(f"order.{name}", ok, witness, ms / len(rep.checks))
    cell_depth = max(depth, 5)
    res, ms = _timed(lambda: souslin.cellular_family_check(cell_depth))
    report.add("order.cellular", res["passed"], {k: v for k, v in res.items() if k != "passed"}, ms)


def random_point(rng: random.Random, indices: int = 10) -> lspace.TorusPoint:
    p = lspace.IDENTITY
    for _ in range(rng.randint(0, 3)):
        p = p * lspace.TorusPoint.z(rng.randrange(indices), rng.randint(-6, 6))
    return p


def metric_checks(n: int, seed: int, max_precision: int = 1024) -> dict:
    """Metric axioms on n random symbolic points; returns counts of failures and undecided cases."""
    rng = random.Random(seed)
    fails, undecided = [], 0
    for _ in range(n):
        z, w, v = random_point(rng), random_point(rng), random_point(rng)

        def distances(prec):
            return (lspace.rho_metric(z, w, prec), lspace.rho_metric(w, z, prec),
                    lspace.rho_metric(z, v, prec), lspace.rho_metric(v, w, prec))

        def decided(ds):
            zw = ds[0]
            if z == w:
                return True
            return zw.certified_gt(0) is not lspace.Verdict.UNDECIDED

        ds, prec = lspace.escalate(distances, decided, cap=max_precision)
        zw, wz, zv, vw = ds
        if z == w:
            ok_zero = zw.value == 0 and zw.error == 0
        else:
            verdict = zw.certified_gt(0)
            if verdict is lspace.Verdict.UNDECIDED:
                undecided += 1
            ok_zero = verdict is lspace.Verdict.YES
        sym = zw.value == wz.value
        tri = zw.value <= zv.value + vw.value + 4 * (zw.error + zv.error + vw.error)
        bounded = 0 <= zw.value <= Fraction(1, 2)
        if not (ok_zero and sym and tri and bounded):
            fails.append([str(z), str(w), str(v)])
    return {"points": n, "failures": fails[:5], "undecided": undecided}


def rotation_checks(n: int, seed: int, precision: int = 256) -> dict:
    rng = random.Random(seed)
    fails = []
    for _ in range(n):
        i = rng.randrange(10)
        z = lspace.TorusPoint.z(i, rng.randint(-8, 8))
        w = lspace.TorusPoint.z(i, rng.randint(-8, 8))
        u = lspace.TorusPoint.z(i, rng.randint(-8, 8)) * random_point(rng)
        if lspace.rho_metric(z, w, precision) != lspace.rho_metric(u * z, u * w, precision):
            fails.append([str(z), str(w), str(u)])
    return {"points": n, "failures": fails[:5]}


def _separation(report: Report, samples: int, seed: int, precision: int, mode: str) -> None:
    n_points = max(samples, 1000)
    res, ms = _timed(lambda: metric_checks(n_points, seed))
    report.add("lspace.metric", not res["failures"] and not res["undecided"], res, ms)
    res, ms = _timed(lambda: rotation_checks(n_points, seed))
    report.add("lspace.rotation", not res["failures"], res, ms)

    pairs = separation_pairs(random.Random(seed), 20)
    oracle = WalkOracle(mode=mode)
    gap, ms = _timed(lambda: lspace.osc_gap_search(pairs, oracle))
    if gap is None:
        report.add("lspace.gap", False, {"pairs": len(pairs), "subfamily": None}, ms)
        report.add("lspace.separation", False, {"error": "no gap subfamily"}, 0.0)
        return
    report.add("lspace.gap", gap.c >= 2 and lspace.gap_holds(gap, oracle),
               {"c": gap.c, "subfamily_size": len(gap.subfamily), "delta": str(gap.delta)}, ms)
    t0 = time.perf_counter()
    try:
        sep = lspace.separation_experiment(pairs, oracle, precision=precision)
    except lspace.SeparationError as exc:
        report.add("lspace.separation", False, {"error": str(exc)}, (time.perf_counter() - t0) * 1000)
        return
    ms = (time.perf_counter() - t0) * 1000
    ok = None if sep.verdict is lspace.Verdict.UNDECIDED else sep.passed
    summary = sep.to_dict()
    summary["band_checks"] = len(sep.band_checks)
    summary["triple_checks"] = len(sep.triple_checks)
    summary["min_band_margin"] = min(b["margin"] for b in sep.band_checks) if sep.band_checks else None
    summary["exponent_gaps"] = sorted({g["gap"] for g in sep.exponent_gaps})
    report.add("lspace.separation", ok, summary, ms)


def run_verify(suite: str, samples: int = 100, seed: int = 0, mode: str = HALF_OPEN, depth: int = 4,
               precision: int = lspace.START_PRECISION) -> Report:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    report = Report(suite, mode, seed, {"samples": samples, "depth": depth, "precision": precision})
    if suite in ("facts", "all"):
        _facts(report, samples, seed, mode)
    if suite in ("order", "all"):
        _order(report, depth)
    if suite in ("separation", "all"):
        _separation(report, samples, seed, precision, mode)
    return report

