"""Control value, confidence and the disclosure decision."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ModelError

WEIGHT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ControlParameter:
    name: str
    confidence: float
    weight: float

    def __post_init__(self):
        for field_name in ("confidence", "weight"):
            v = getattr(self, field_name)
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise ModelError(f"control parameter {self.name!r}: {field_name}={v!r} outside [0, 1]")


@dataclass(frozen=True)
class ControlModel:
    parameters: tuple[ControlParameter, ...]

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(self.parameters))
        total = math.fsum(p.weight for p in self.parameters)
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise ModelError(f"control weights sum to {total!r}, expected 1")

    @classmethod
    def from_records(cls, records: Sequence[dict]) -> "ControlModel":
        try:
            params = [ControlParameter(str(r["name"]), float(r["confidence"]), float(r["weight"])) for r in records]
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"malformed control parameter: {exc}") from exc
        return cls(tuple(params))

    def to_records(self) -> list[dict]:
        return [{"name": p.name, "confidence": p.confidence, "weight": p.weight} for p in self.parameters]


DEFAULT_CONTROL = ControlModel(
    (
        ControlParameter("behaviour", 1.0, 0.2),
        ControlParameter("legal system", 0.8, 0.5),
        ControlParameter("social", 0.5, 0.3),
    )
)


@dataclass(frozen=True)
class ConfidenceResult:
    trust: float
    control: float
    confidence: float
    share: bool
    threshold: float


def control_value(model: ControlModel) -> float:
    if not isinstance(model, ControlModel):
        model = ControlModel(tuple(model))
    total = math.fsum(p.weight * p.confidence for p in model.parameters)
    return min(1.0, max(0.0, total))


def confidence(trust: float, control: float) -> float:
    if not (math.isfinite(trust) and -1.0 <= trust <= 1.0):
        raise DomainError(f"trust {trust!r} outside [-1, 1]")
    if not (math.isfinite(control) and 0.0 <= control <= 1.0):
        raise DomainError(f"control {control!r} outside [0, 1]")
    return trust + control


def decide_disclosure(confidence_value: float, threshold: float) -> bool:
    """Share only when confidence strictly exceeds the threshold."""
    return confidence_value > threshold


def evaluate_confidence(trust: float, model: ControlModel, threshold: float) -> ConfidenceResult:
    if not (math.isfinite(threshold) and -1.0 <= threshold <= 2.0):
        raise DomainError(f"disclosure threshold {threshold!r} outside [-1, 2]")
    cl = control_value(model)
    cf = confidence(trust, cl)
    return ConfidenceResult(trust, cl, cf, decide_disclosure(cf, threshold), threshold)
