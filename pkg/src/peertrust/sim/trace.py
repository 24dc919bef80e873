"""Trace records, the trace digest, and the trust-matrix CSV format."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import Iterable

from ..confidence import ConfidenceResult
from ..ledger import OpinionTable
from ..trust import Basis, TrustAssessment

# event kinds
REQUEST_SENT = "RequestSent"
RESPONSE_RECEIVED = "ResponseReceived"
TIMEOUT = "Timeout"
OPINION_REQUESTED = "OpinionRequested"
OPINION_REPORTED = "OpinionReported"
TRUST_ASSESSED = "TrustAssessed"
DISCLOSURE_DECIDED = "DisclosureDecided"

MATRIX_HEADER = ("trustor", "trustee", "personal", "community", "trust", "basis", "conflict", "confidence", "share")


@dataclass(frozen=True)
class TraceEvent:
    t: float
    seq: int
    kind: str
    actor: str
    peer: str | None
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"t": self.t, "seq": self.seq, "kind": self.kind, "actor": self.actor, "peer": self.peer,
                "payload": self.payload}

    def canonical(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), allow_nan=False)

    @classmethod
    def from_dict(cls, d: dict) -> "TraceEvent":
        return cls(float(d["t"]), int(d["seq"]), d["kind"], d["actor"], d.get("peer"), d.get("payload", {}))


@dataclass(frozen=True)
class MatrixEntry:
    trustor: str
    trustee: str
    assessment: TrustAssessment
    confidence: ConfidenceResult

    def row(self) -> tuple[str, ...]:
        a, c = self.assessment, self.confidence
        return (
            self.trustor,
            self.trustee,
            repr(a.personal),
            "" if a.community is None else repr(a.community),
            repr(a.trust),
            a.basis.value,
            "true" if a.conflict else "false",
            repr(c.confidence),
            "true" if c.share else "false",
        )


@dataclass
class SimulationTrace:
    events: list
    final_tables: dict
    trust_matrix: dict  # (trustor, trustee) -> MatrixEntry

    def jsonl(self) -> str:
        return "".join(e.canonical() + "\n" for e in self.events)

    def count(self, kind: str) -> int:
        return sum(1 for e in self.events if e.kind == kind)


def trace_digest(trace: SimulationTrace | Iterable[TraceEvent]) -> int:
    """Order-sensitive 64-bit digest of the canonical event serialization."""
    events = trace.events if isinstance(trace, SimulationTrace) else trace
    h = hashlib.blake2b(digest_size=8)
    for e in events:
        h.update(e.canonical().encode("utf-8"))
        h.update(b"\n")
    return int.from_bytes(h.digest(), "big")


def read_trace_jsonl(text: str) -> list[TraceEvent]:
    return [TraceEvent.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]


def write_matrix_csv(entries: Iterable[MatrixEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(MATRIX_HEADER)
    for e in entries:
        writer.writerow(e.row())
    return buf.getvalue()


def _bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"expected true/false, got {text!r}")
    return text == "true"


def read_matrix_csv(text: str) -> list[MatrixEntry]:
    """Parse a trust-matrix CSV. Control and threshold are not stored, so they come back as NaN."""
    reader = csv.DictReader(text.splitlines())
    if reader.fieldnames is None or tuple(reader.fieldnames) != MATRIX_HEADER:
        raise ValueError(f"trust matrix header must be {','.join(MATRIX_HEADER)}")
    out = []
    for row in reader:
        community = None if row["community"] == "" else float(row["community"])
        assessment = TrustAssessment(
            float(row["personal"]), community, float(row["trust"]), Basis(row["basis"]), _bool(row["conflict"])
        )
        conf = ConfidenceResult(assessment.trust, float("nan"), float(row["confidence"]), _bool(row["share"]),
                                float("nan"))
        out.append(MatrixEntry(row["trustor"], row["trustee"], assessment, conf))
    return out


def tables_to_rows(tables: dict[str, OpinionTable]) -> dict[str, str]:
    return {owner: table.to_csv() for owner, table in tables.items()}
