"""Per-node opinion tables.

Every request a node sends to a peer bumps the peer's total; every scored
response bumps the positive or negative count. Requests that never get a
response stay in the total only, which drags the opinion toward zero.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from typing import Hashable, Iterable

from .errors import DomainError, ProtocolOrderError, SelfRequestError
from .scoring import Classification

NodeId = Hashable

TABLE_HEADER = ("node", "weight", "opinion", "positive", "negative", "total")


def personal_opinion_of(positive: int, negative: int, total: int) -> float:
    if total <= 0:
        return 0.0
    return (positive - negative) / total


def node_weight_of(positive: int, negative: int, total: int) -> float:
    if positive > negative:
        return personal_opinion_of(positive, negative, total)
    return 0.0


@dataclass(frozen=True)
class OpinionEntry:
    positive: int = 0
    negative: int = 0
    total: int = 0
    last_interaction_time: float | None = None
    first_contact_time: float | None = None

    def __post_init__(self):
        if min(self.positive, self.negative, self.total) < 0:
            raise DomainError("interaction counts must be nonnegative")
        if self.positive + self.negative > self.total:
            raise DomainError(
                f"positive + negative ({self.positive + self.negative}) exceeds total ({self.total})"
            )

    @property
    def opinion(self) -> float:
        return personal_opinion_of(self.positive, self.negative, self.total)

    @property
    def weight(self) -> float:
        return node_weight_of(self.positive, self.negative, self.total)

    @property
    def outstanding(self) -> int:
        return self.total - self.positive - self.negative

    def counts(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.total)


def personal_opinion(entry: OpinionEntry) -> float:
    return entry.opinion


def node_weight(entry: OpinionEntry) -> float:
    return entry.weight


# A node's view of itself: every interaction positive, so opinion and weight are 1.
SELF_ENTRY = OpinionEntry(positive=1, negative=0, total=1)


@dataclass
class OpinionTable:
    """Opinion table owned by one node. Single writer; not thread-safe."""

    owner: NodeId
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.owner is None or self.owner == "":
            raise DomainError("table owner id must be non-empty")
        if self.owner in self.entries:
            raise SelfRequestError(f"table for {self.owner!r} cannot hold an entry for itself")

    def entry(self, peer: NodeId) -> OpinionEntry:
        if peer == self.owner:
            return SELF_ENTRY
        return self.entries.get(peer, OpinionEntry())

    def opinion(self, peer: NodeId) -> float:
        return self.entry(peer).opinion

    def weight(self, peer: NodeId) -> float:
        return self.entry(peer).weight

    def record_request(self, peer: NodeId, now: float) -> OpinionEntry:
        if peer == self.owner:
            raise SelfRequestError(f"node {peer!r} cannot send a request to itself")
        old = self.entries.get(peer, OpinionEntry())
        first = old.first_contact_time if old.first_contact_time is not None else float(now)
        new = replace(old, total=old.total + 1, first_contact_time=first)
        self.entries[peer] = new
        return new

    def record_outcome(self, peer: NodeId, classification: Classification, now: float) -> OpinionEntry:
        if peer == self.owner:
            raise SelfRequestError(f"node {peer!r} cannot score a response from itself")
        old = self.entries.get(peer, OpinionEntry())
        if old.outstanding <= 0:
            raise ProtocolOrderError(f"no outstanding request to {peer!r} for this outcome")
        classification = Classification(classification)
        if classification is Classification.POSITIVE:
            new = replace(old, positive=old.positive + 1, last_interaction_time=float(now))
        else:
            new = replace(old, negative=old.negative + 1, last_interaction_time=float(now))
        self.entries[peer] = new
        return new

    def peers(self) -> list:
        return list(self.entries)

    def copy(self) -> "OpinionTable":
        return OpinionTable(self.owner, dict(self.entries))

    def rows(self) -> list[tuple]:
        """Table rows ``(node, weight, opinion, positive, negative, total)``; owner excluded."""
        return [(peer, e.weight, e.opinion, e.positive, e.negative, e.total) for peer, e in self.entries.items()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_HEADER)
        for peer, weight, opinion, pos, neg, tot in self.rows():
            writer.writerow((peer, repr(weight), repr(opinion), pos, neg, tot))
        return buf.getvalue()


def read_table_csv(text: str | Iterable[str]) -> dict[str, OpinionEntry]:
    """Parse a table snapshot; ``weight`` and ``opinion`` are rederived from the counts."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or tuple(reader.fieldnames) != TABLE_HEADER:
        raise DomainError(f"table header must be {','.join(TABLE_HEADER)}, got {reader.fieldnames}")
    out: dict[str, OpinionEntry] = {}
    for lineno, row in enumerate(reader, start=2):
        try:
            entry = OpinionEntry(int(row["positive"]), int(row["negative"]), int(row["total"]))
        except (TypeError, ValueError) as exc:
            raise DomainError(f"line {lineno}: {exc}") from exc
        node = row["node"]
        if not node:
            raise DomainError(f"line {lineno}: empty node id")
        if node in out:
            raise DomainError(f"line {lineno}: duplicate node {node!r}")
        out[node] = entry
    return out
