"""Interaction scoring.

Five properties of a responded-to request are scored on ``[0, 1]``:

* response time and time gap decay along an inverted Gompertz curve
  ``1 - exp(-b * exp(-c * t))``,
* familiarity grows along the Gompertz curve ``exp(-b * exp(-c * t))``,
* reciprocity is the granted privilege level normalized onto its scale,
* relevance is a graded judgement mapped through a fixed table.

The weighted sum of the five scores decides whether the interaction was
positive. Time units follow the curves: hours for response time, months for
the gap between interactions, years for familiarity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DegenerateScaleError, DomainError, WeightError

HOURS_PER_MONTH = 720.0
HOURS_PER_YEAR = 8760.0

WEIGHT_TOLERANCE = 1e-9

PROPERTY_NAMES = ("response_time", "time_gap", "familiarity", "reciprocity", "relevance")


class Classification(str, enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


class RelevanceGrade(enum.IntEnum):
    """Five ordered relevance grades; ``score`` is the fixed grade mapping."""

    NOT_AT_ALL_RELEVANT = 0
    MAY_NOT_BE_RELEVANT = 1
    CANT_SAY = 2
    TO_SOME_EXTENT_RELEVANT = 3
    FULLY_RELEVANT = 4

    @property
    def score(self) -> float:
        return _RELEVANCE_SCORES[self]

    @classmethod
    def parse(cls, text: str) -> "RelevanceGrade":
        """Accept enum names, short aliases (``fully``, ``not_at_all``...) or 0..4."""
        key = str(text).strip().lower().replace("-", "_").replace(" ", "_").replace("'", "")
        if key in _RELEVANCE_ALIASES:
            return _RELEVANCE_ALIASES[key]
        if key.isdigit() and int(key) in range(5):
            return cls(int(key))
        raise DomainError(f"unknown relevance grade {text!r}")


_RELEVANCE_SCORES = {
    RelevanceGrade.NOT_AT_ALL_RELEVANT: 0.00,
    RelevanceGrade.MAY_NOT_BE_RELEVANT: 0.25,
    RelevanceGrade.CANT_SAY: 0.50,
    RelevanceGrade.TO_SOME_EXTENT_RELEVANT: 0.75,
    RelevanceGrade.FULLY_RELEVANT: 1.00,
}

_RELEVANCE_ALIASES = {}
for _grade, _short in zip(RelevanceGrade, ("not_at_all", "may_not", "cant_say", "to_some_extent", "fully")):
    _RELEVANCE_ALIASES[_grade.name.lower()] = _grade
    _RELEVANCE_ALIASES[_short] = _grade
del _grade, _short


def _check_finite_nonneg(value: float, what: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"{what} must be finite and >= 0, got {value!r}")
    return value


@dataclass(frozen=True)
class GompertzParams:
    b: float
    c: float

    def __post_init__(self):
        for name in ("b", "c"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"Gompertz constant {name} must be finite and > 0, got {v!r}")


@dataclass(frozen=True)
class PrivilegeLevel:
    """Privilege ``r`` granted on the responder's scale ``[r_min, r_max]``."""

    r: int
    r_min: int = 0
    r_max: int = 10

    def __post_init__(self):
        if self.r_max == self.r_min:
            raise DegenerateScaleError(f"privilege scale is degenerate: r_min == r_max == {self.r_min}")
        if self.r_min > self.r_max:
            raise DomainError(f"r_min ({self.r_min}) must be below r_max ({self.r_max})")
        if not self.r_min <= self.r <= self.r_max:
            raise DomainError(f"privilege level {self.r} outside [{self.r_min}, {self.r_max}]")


@dataclass(frozen=True)
class PropertyWeights:
    response_time: float = 0.2
    time_gap: float = 0.1
    familiarity: float = 0.3
    reciprocity: float = 0.3
    relevance: float = 0.1

    def __post_init__(self):
        values = self.as_tuple()
        for name, w in zip(PROPERTY_NAMES, values):
            if not (math.isfinite(w) and 0.0 <= w <= 1.0):
                raise WeightError(f"weight {name}={w!r} outside [0, 1]")
        total = math.fsum(values)
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise WeightError(f"property weights sum to {total!r}, expected 1")

    @classmethod
    def from_sequence(cls, values) -> "PropertyWeights":
        values = [float(v) for v in values]
        if len(values) != 5:
            raise WeightError(f"expected 5 property weights, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.response_time, self.time_gap, self.familiarity, self.reciprocity, self.relevance)


DEFAULT_RESPONSE_PARAMS = GompertzParams(500.0, 0.5)
DEFAULT_GAP_PARAMS = GompertzParams(10.0, 0.25)
DEFAULT_FAMILIARITY_PARAMS = GompertzParams(10.0, 2.5)
DEFAULT_WEIGHTS = PropertyWeights()
DEFAULT_INTERACTION_THRESHOLD = 0.5


@dataclass(frozen=True)
class InteractionInputs:
    """Raw measurements of one interaction. Defaults reproduce the worked example."""

    response_elapsed: float = 10.0
    gap_since_previous: float = 5.0
    acquaintance_age: float = 1.0
    privilege: PrivilegeLevel = field(default_factory=lambda: PrivilegeLevel(9, 0, 10))
    relevance: RelevanceGrade = RelevanceGrade.FULLY_RELEVANT
    params_response: GompertzParams = DEFAULT_RESPONSE_PARAMS
    params_gap: GompertzParams = DEFAULT_GAP_PARAMS
    params_familiarity: GompertzParams = DEFAULT_FAMILIARITY_PARAMS

    def __post_init__(self):
        _check_finite_nonneg(self.response_elapsed, "response_elapsed")
        _check_finite_nonneg(self.gap_since_previous, "gap_since_previous")
        _check_finite_nonneg(self.acquaintance_age, "acquaintance_age")


@dataclass(frozen=True)
class InteractionScore:
    scores: tuple[float, float, float, float, float]
    aggregate: float
    classification: Classification | None = None

    def classified(self, threshold: float) -> "InteractionScore":
        return InteractionScore(self.scores, self.aggregate, classify_interaction(self.aggregate, threshold))


def response_time_score(params: GompertzParams, elapsed: float) -> float:
    """Score for a response that took ``elapsed`` hours; 1 when instant."""
    t = _check_finite_nonneg(elapsed, "elapsed")
    # -expm1 keeps precision where b*exp(-c t) is tiny.
    return -math.expm1(-params.b * math.exp(-params.c * t))


def time_gap_score(params: GompertzParams, gap: float) -> float:
    """Score for ``gap`` months since the previous interaction with the peer."""
    t = _check_finite_nonneg(gap, "gap")
    return -math.expm1(-params.b * math.exp(-params.c * t))


def familiarity_score(params: GompertzParams, age: float) -> float:
    """Score for an acquaintance of ``age`` years."""
    t = _check_finite_nonneg(age, "age")
    return math.exp(-params.b * math.exp(-params.c * t))


def reciprocity_score(p: PrivilegeLevel) -> float:
    span = p.r_max - p.r_min
    if span == 0:
        raise DegenerateScaleError("privilege scale is degenerate")
    return (p.r - p.r_min) / span


def relevance_score(grade: RelevanceGrade) -> float:
    return RelevanceGrade(grade).score


def weighted_sum(scores, weights: PropertyWeights) -> float:
    """Weighted sum of five unit scores, clamped against rounding to ``[0, 1]``."""
    total = math.fsum(w * s for w, s in zip(weights.as_tuple(), scores))
    return min(1.0, max(0.0, total))


def aggregate_score(inputs: InteractionInputs, weights: PropertyWeights = DEFAULT_WEIGHTS) -> InteractionScore:
    scores = (
        response_time_score(inputs.params_response, inputs.response_elapsed),
        time_gap_score(inputs.params_gap, inputs.gap_since_previous),
        familiarity_score(inputs.params_familiarity, inputs.acquaintance_age),
        reciprocity_score(inputs.privilege),
        relevance_score(inputs.relevance),
    )
    return InteractionScore(scores, weighted_sum(scores, weights))


def classify_interaction(aggregate: float, threshold: float) -> Classification:
    """Positive only when ``aggregate`` strictly exceeds ``threshold``."""
    for name, v in (("aggregate", aggregate), ("threshold", threshold)):
        if not (math.isfinite(v) and 0.0 <= v <= 1.0):
            raise DomainError(f"{name} must lie in [0, 1], got {v!r}")
    return Classification.POSITIVE if aggregate > threshold else Classification.NEGATIVE


def score_interaction(
    inputs: InteractionInputs,
    weights: PropertyWeights = DEFAULT_WEIGHTS,
    threshold: float = DEFAULT_INTERACTION_THRESHOLD,
) -> InteractionScore:
    """Aggregate and classify in one step."""
    return aggregate_score(inputs, weights).classified(threshold)
