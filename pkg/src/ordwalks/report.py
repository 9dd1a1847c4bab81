"""Verification reports and their JSON / CSV / table renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional

PASS, FAIL, UNDECIDED = "pass", "fail", "undecided"

# Every report entry carries one of these anchors.
ANCHORS = {
    "csequence.axioms": "Cα∩ γ is finite",
    "csequence.f_table": "F2=[2,10]∪ {30}∪[40,90]∪ {200}",
    "facts.rho1": "ϱ1(k,β)=1",
    "facts.trace_x": "L(δα,α)  = { 0,30,90,200}",
    "facts.trace_y": "L(δα,α)  = {0,10,40,90,200}",
    "facts.ladder": "L(δ,β2)={90,200}",
    "facts.initial": "L(δ,δ+ω·9) = L(ξ,δ+ω·9)∩ 1000",
    "facts.osc": "{30,200}⊂ Osc(y,x)",
    "facts.special_pairs": "|Osc(α,β)∩ δ|>1",
    "facts.pattern": "eα(ξ−)≤ eβ(ξ−) and eα(ξ)>  eβ(ξ)",
    "facts.e_table": "e_x(90)= 62 , e_x(200)=63",
    "facts.additivity": "L(α,γ) = L(α,β)∪ L(β,γ)",
    "facts.oracle": "L(α,α) = ∅",
    "order.total": "s(Δ(s,t))=0 or t(Δ(s,t))=1",
    "order.transitive": "s(Δ(s,t))=0 or t(Δ(s,t))=1",
    "order.dense": "set m=(s↾β)⌢1",
    "order.cone_separation": "s≺([t]∪[t†])",
    "order.pi_base": "is a π-base for the topology on S",
    "order.refine": "there is some s with v1≺[s]≺ v2",
    "order.convex_cones": "is a π-base for the topology on S",
    "order.dagger_partition": "V=\\{u†: u∈ U\\}",
    "order.cofinal": "V=\\{u†: u∈ U\\}",
    "order.cellular": "Uξ={(uξ,1)}×(V∩ (wξ−,wξ+))",
    "lspace.metric": "times the arc length within T",
    "lspace.rotation": "ρ(z,w) = ρ(u· z,u· w)",
    "lspace.gap": "osc(a(0),b(0))+ c-1≤ osc(a(0),b(1)) ≤ osc(a(0),b(0))+ c",
    "lspace.separation": "c′ |ra(0)−rb(0)| >  ε",
}


@dataclass
class Entry:
    check_id: str
    verdict: str
    witness: Any = None
    runtime_ms: float = 0.0

    @property
    def anchor(self) -> str:
        return ANCHORS[self.check_id]


@dataclass
class Report:
    suite: str
    convention: str
    seed: int
    params: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.verdict == PASS for e in self.entries)

    def add(self, check_id: str, ok: Optional[bool], witness=None, runtime_ms: float = 0.0):
        if check_id not in ANCHORS:
            raise KeyError(f"no anchor registered for {check_id}")
        verdict = UNDECIDED if ok is None else (PASS if ok else FAIL)
        self.entries.append(Entry(check_id, verdict, witness, runtime_ms))

    def sorted_entries(self) -> list:
        return sorted(self.entries, key=lambda e: e.check_id)

    def to_dict(self, timings: bool = False) -> dict:
        entries = []
        for e in self.sorted_entries():
            row = {"check_id": e.check_id, "anchor": e.anchor, "verdict": e.verdict, "witness": e.witness}
            if timings:
                row["runtime_ms"] = round(e.runtime_ms, 3)
            entries.append(row)
        return {
            "suite": self.suite,
            "convention": self.convention,
            "seed": self.seed,
            "params": self.params,
            "passed": self.passed,
            "entries": entries,
        }


def dumps_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n"


def rows_to_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def rows_to_table(header: list, rows: list) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for n, r in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_report(report: Report, fmt: str = "json", timings: bool = False) -> str:
    if fmt == "json":
        return dumps_json(report.to_dict(timings))
    header = ["check_id", "anchor", "verdict", "witness"] + (["runtime_ms"] if timings else [])
    rows = []
    for e in report.sorted_entries():
        row = [e.check_id, e.anchor, e.verdict, json.dumps(e.witness, sort_keys=True, ensure_ascii=False, default=str)]
        if timings:
            row.append(f"{e.runtime_ms:.3f}")
        rows.append(row)
    if fmt == "csv":
        return rows_to_csv(header, rows)
    if fmt == "table":
        title = f"suite={report.suite} convention={report.convention} seed={report.seed} passed={report.passed}\n"
        return title + rows_to_table(header, rows)
    raise ValueError(f"unknown format {fmt!r}")
