"""Community opinion, the personal/community combinator, and trust assessment."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Hashable, Sequence

from .errors import AggregationError, DomainError
from .ledger import OpinionEntry


class Basis(str, enum.Enum):
    PERSONAL_ONLY = "PersonalOnly"
    COMBINED = "Combined"


@dataclass(frozen=True)
class OpinionReport:
    """``reporter``'s personal opinion on ``subject``, plus the weight the trustor gives the reporter."""

    reporter: Hashable
    subject: Hashable
    opinion: float
    reporter_weight: float

    def __post_init__(self):
        if not (math.isfinite(self.opinion) and -1.0 <= self.opinion <= 1.0):
            raise DomainError(f"reported opinion {self.opinion!r} outside [-1, 1]")
        if not (math.isfinite(self.reporter_weight) and 0.0 <= self.reporter_weight <= 1.0):
            raise DomainError(f"reporter weight {self.reporter_weight!r} outside [0, 1]")
        if self.reporter == self.subject:
            raise DomainError(f"node {self.reporter!r} cannot report on itself")


@dataclass(frozen=True)
class TrustAssessment:
    personal: float
    community: float | None
    trust: float
    basis: Basis
    conflict: bool = False


def community_opinion(reports: Sequence[OpinionReport]) -> float:
    """Weighted opinions summed and divided by the number of reporters.

    Zero-weight reporters still count in the divisor. No reporters gives 0.
    """
    reports = list(reports)
    if not reports:
        return 0.0
    subjects = {r.subject for r in reports}
    if len(subjects) > 1:
        raise AggregationError(f"reports concern several subjects: {sorted(map(str, subjects))}")
    acc = 0.0
    for r in reports:
        acc += r.reporter_weight * r.opinion
    return acc / len(reports)


def combine_otimes(personal: float, community: float) -> tuple[float, bool]:
    """Merge personal and community opinion into ``(trust, conflict)``.

    A zero on either side defers to the other. Otherwise the opinion of larger
    magnitude wins; equal magnitudes with equal sign return that value, and
    exact opposites cancel to 0 with the conflict flag raised.
    """
    for name, v in (("personal", personal), ("community", community)):
        if not (math.isfinite(v) and -1.0 <= v <= 1.0):
            raise DomainError(f"{name} opinion {v!r} outside [-1, 1]")
    if personal == 0.0:
        return community, False
    if community == 0.0:
        return personal, False
    ap, ac = abs(personal), abs(community)
    if ap > ac:
        return personal, False
    if ap < ac:
        return community, False
    if personal == community:
        return personal, False
    return 0.0, True


def assess_trust(
    entry: OpinionEntry,
    reports: Sequence[OpinionReport],
    t_min: int,
    *,
    trustor: Hashable | None = None,
) -> TrustAssessment:
    """Trust from the trustor's own ledger entry, falling back on the community below ``t_min``.

    Reports from ``trustor`` itself are dropped before aggregation.
    """
    if int(t_min) != t_min or t_min < 1:
        raise DomainError(f"t_min must be a positive integer, got {t_min!r}")
    personal = entry.opinion
    if entry.total >= t_min:
        return TrustAssessment(personal, None, personal, Basis.PERSONAL_ONLY, False)
    if trustor is not None:
        reports = [r for r in reports if r.reporter != trustor]
    community = community_opinion(reports)
    trust, conflict = combine_otimes(personal, community)
    return TrustAssessment(personal, community, trust, Basis.COMBINED, conflict)
