"""Run reports and the files a simulation run writes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import trace as tr


@dataclass
class RunReport:
    digest: int
    positive: int
    negative: int
    timeouts: int
    conflicts: int
    pairs: list = field(default_factory=list)
    paths: dict = field(default_factory=dict)

    @property
    def digest_hex(self) -> str:
        return f"{self.digest:016x}"

    def to_dict(self) -> dict:
        return {
            "digest": self.digest_hex,
            "interactions": {"positive": self.positive, "negative": self.negative, "timeouts": self.timeouts},
            "conflicts": self.conflicts,
            "pairs": self.pairs,
            "paths": self.paths,
        }


def build_report(trace: tr.SimulationTrace) -> RunReport:
    positive = negative = timeouts = conflicts = 0
    for e in trace.events:
        if e.kind == tr.RESPONSE_RECEIVED:
            if e.payload["classification"] == "Positive":
                positive += 1
            else:
                negative += 1
        elif e.kind == tr.TIMEOUT:
            timeouts += 1
        elif e.kind == tr.TRUST_ASSESSED and e.payload["conflict"]:
            conflicts += 1
    pairs = []
    for (i, j), m in trace.trust_matrix.items():
        entry = trace.final_tables[i].entry(j)
        pairs.append({
            "trustor": i,
            "trustee": j,
            "positive": entry.positive,
            "negative": entry.negative,
            "total": entry.total,
            "personal": m.assessment.personal,
            "trust": m.assessment.trust,
            "basis": m.assessment.basis.value,
            "conflict": m.assessment.conflict,
            "confidence": m.confidence.confidence,
            "share": m.confidence.share,
        })
    return RunReport(tr.trace_digest(trace), positive, negative, timeouts, conflicts, pairs)


def write_outputs(trace: tr.SimulationTrace, out_dir) -> RunReport:
    """Write trace, trust matrix, table snapshots and summary under ``out_dir``. Raises ``OSError``."""
    out = Path(out_dir)
    tables_dir = out / "tables"
    tables_dir.mkdir(parents=True, exist_ok=True)
    report = build_report(trace)
    paths = {"trace": out / "trace.jsonl", "trust_matrix": out / "trust_matrix.csv", "summary": out / "summary.json"}
    paths["trace"].write_text(trace.jsonl())
    paths["trust_matrix"].write_text(tr.write_matrix_csv(trace.trust_matrix.values()))
    for owner, table in trace.final_tables.items():
        p = tables_dir / f"{owner}.csv"
        p.write_text(table.to_csv())
        paths[f"table:{owner}"] = p
    report.paths = {k: str(v) for k, v in paths.items()}
    paths["summary"].write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    return report


def format_report(report: RunReport) -> str:
    lines = [
        f"digest     {report.digest_hex}",
        f"positive   {report.positive}",
        f"negative   {report.negative}",
        f"timeouts   {report.timeouts}",
        f"conflicts  {report.conflicts}",
        "",
        f"{'trustor':<12}{'trustee':<12}{'t+':>5}{'t-':>5}{'t':>5}{'Op^p':>9}{'trust':>9}  {'basis':<13}{'Cf':>8}  share",
    ]
    for p in report.pairs:
        lines.append(
            f"{p['trustor']:<12}{p['trustee']:<12}{p['positive']:>5}{p['negative']:>5}{p['total']:>5}"
            f"{p['personal']:>9.4f}{p['trust']:>9.4f}  {p['basis']:<13}{p['confidence']:>8.4f}  "
            f"{'yes' if p['share'] else 'no'}{'  CONFLICT' if p['conflict'] else ''}"
        )
    return "\n".join(lines)
