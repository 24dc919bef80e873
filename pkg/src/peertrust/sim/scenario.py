"""Scenario documents: node configuration, behaviour profiles and the action schedule.

A scenario file is JSON with top-level keys ``nodes``, ``schedule``,
``horizon_hours``, ``seed`` and ``options``. Omitted node fields fall back to
the worked-example constants (property weights, Gompertz constants, control
model). ``disclosure_threshold`` has no default and must be given per node.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..confidence import DEFAULT_CONTROL, ControlModel
from ..errors import PeerTrustError, ScenarioError
from ..scoring import (
    DEFAULT_FAMILIARITY_PARAMS,
    DEFAULT_GAP_PARAMS,
    DEFAULT_INTERACTION_THRESHOLD,
    DEFAULT_RESPONSE_PARAMS,
    DEFAULT_WEIGHTS,
    PROPERTY_NAMES,
    GompertzParams,
    PrivilegeLevel,
    PropertyWeights,
    RelevanceGrade,
)

PROBABILITY_TOLERANCE = 1e-9
DEFAULT_T_MIN = 10
DEFAULT_WAIT_HOURS = 24.0
MAX_SEED = 2**64 - 1


class ActionKind(str, enum.Enum):
    DATA_REQUEST = "data_request"
    TRUST_QUERY = "trust_query"
    CONFIDENCE_QUERY = "confidence_query"


@dataclass(frozen=True)
class DelayDistribution:
    """Response delay in hours: ``fixed`` (a), ``uniform`` [a, b] or ``exponential`` with mean a."""

    kind: str = "fixed"
    a: float = 0.0
    b: float = 0.0

    def problems(self) -> list[str]:
        out = []
        if self.kind not in ("fixed", "uniform", "exponential"):
            out.append(f"unknown delay kind {self.kind!r}")
        if not (math.isfinite(self.a) and self.a >= 0):
            out.append(f"delay parameter {self.a!r} must be finite and >= 0")
        if self.kind == "uniform" and not (math.isfinite(self.b) and self.b >= self.a):
            out.append(f"uniform delay upper bound {self.b!r} below lower bound {self.a!r}")
        return out

    def sample(self, rng) -> float:
        if self.kind == "fixed":
            return self.a
        if self.kind == "uniform":
            return float(rng.uniform(self.a, self.b))
        return float(rng.exponential(self.a)) if self.a > 0 else 0.0

    def to_dict(self) -> dict:
        if self.kind == "fixed":
            return {"kind": "fixed", "hours": self.a}
        if self.kind == "uniform":
            return {"kind": "uniform", "low": self.a, "high": self.b}
        return {"kind": "exponential", "mean": self.a}


@dataclass(frozen=True)
class GrantPolicy:
    """Privilege level granted to requesters, with optional per-requester levels."""

    level: int = 9
    r_min: int = 0
    r_max: int = 10
    per_requester: dict = field(default_factory=dict)

    def for_requester(self, requester) -> PrivilegeLevel:
        return PrivilegeLevel(int(self.per_requester.get(requester, self.level)), self.r_min, self.r_max)


FULLY_RELEVANT_ONLY = (0.0, 0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class BehaviorProfile:
    respond_probability: float = 1.0
    response_delay: DelayDistribution = DelayDistribution("fixed", 10.0)
    relevance_distribution: tuple = FULLY_RELEVANT_ONLY
    granted_level: GrantPolicy = GrantPolicy()

    def problems(self) -> list[str]:
        out = []
        if not (math.isfinite(self.respond_probability) and 0.0 <= self.respond_probability <= 1.0):
            out.append(f"respond_probability {self.respond_probability!r} outside [0, 1]")
        out += self.response_delay.problems()
        probs = self.relevance_distribution
        if len(probs) != 5:
            out.append("relevance_distribution needs 5 probabilities")
        elif any(not (math.isfinite(p) and p >= 0) for p in probs):
            out.append("relevance probabilities must be finite and >= 0")
        elif abs(math.fsum(probs) - 1.0) > PROBABILITY_TOLERANCE:
            out.append(f"relevance probabilities sum to {math.fsum(probs)!r}, expected 1")
        g = self.granted_level
        try:
            g.for_requester(None)
            for req in g.per_requester:
                g.for_requester(req)
        except PeerTrustError as exc:
            out.append(f"granted_level: {exc}")
        return out


@dataclass(frozen=True)
class NodeConfig:
    id: str
    disclosure_threshold: float
    weights: PropertyWeights = DEFAULT_WEIGHTS
    response_params: GompertzParams = DEFAULT_RESPONSE_PARAMS
    gap_params: GompertzParams = DEFAULT_GAP_PARAMS
    familiarity_params: GompertzParams = DEFAULT_FAMILIARITY_PARAMS
    interaction_threshold: float = DEFAULT_INTERACTION_THRESHOLD
    t_min: int = DEFAULT_T_MIN
    control: ControlModel = DEFAULT_CONTROL
    control_overrides: dict = field(default_factory=dict)
    wait_hours: float = DEFAULT_WAIT_HOURS
    retry_count: int = 0
    behavior: BehaviorProfile = BehaviorProfile()

    def control_for(self, trustee) -> ControlModel:
        return self.control_overrides.get(trustee, self.control)

    def problems(self) -> list[str]:
        out = []
        where = f"node {self.id!r}"
        if not (math.isfinite(self.interaction_threshold) and 0.0 <= self.interaction_threshold <= 1.0):
            out.append(f"{where}: interaction_threshold {self.interaction_threshold!r} outside [0, 1]")
        if not (isinstance(self.t_min, int) and self.t_min >= 1):
            out.append(f"{where}: t_min must be a positive integer")
        if not (math.isfinite(self.disclosure_threshold) and -1.0 <= self.disclosure_threshold <= 2.0):
            out.append(f"{where}: disclosure_threshold {self.disclosure_threshold!r} outside [-1, 2]")
        if not (math.isfinite(self.wait_hours) and self.wait_hours > 0):
            out.append(f"{where}: wait_hours must be > 0")
        if not (isinstance(self.retry_count, int) and self.retry_count >= 0):
            out.append(f"{where}: retry_count must be a nonnegative integer")
        out += [f"{where}: {p}" for p in self.behavior.problems()]
        return out


@dataclass(frozen=True)
class ScheduledAction:
    time: float
    actor: str
    kind: ActionKind
    target: str


@dataclass(frozen=True)
class Scenario:
    nodes: tuple
    schedule: tuple = ()
    horizon: float = 0.0
    seed: int = 0
    score_opinion_responses: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        # stable sort: ties keep their listed order
        object.__setattr__(self, "schedule", tuple(sorted(self.schedule, key=lambda a: a.time)))
        problems = self.problems()
        if problems:
            raise ScenarioError(problems)

    @property
    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def node(self, node_id) -> NodeConfig:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def with_seed(self, seed: int) -> "Scenario":
        return Scenario(self.nodes, self.schedule, self.horizon, seed, self.score_opinion_responses)

    def problems(self) -> list[str]:
        out = []
        ids = [n.id for n in self.nodes]
        seen = set()
        for i in ids:
            if not isinstance(i, str) or not i:
                out.append(f"node id {i!r} must be a non-empty string")
            elif i in seen:
                out.append(f"duplicate node id {i!r}")
            seen.add(i)
        for n in self.nodes:
            out += n.problems()
            for peer in list(n.control_overrides) + list(n.behavior.granted_level.per_requester):
                if peer not in seen:
                    out.append(f"node {n.id!r}: references unknown node {peer!r}")
        if not (isinstance(self.horizon, (int, float)) and math.isfinite(self.horizon) and self.horizon >= 0):
            out.append(f"horizon_hours {self.horizon!r} must be finite and >= 0")
        if not (isinstance(self.seed, int) and 0 <= self.seed <= MAX_SEED):
            out.append(f"seed {self.seed!r} must be an unsigned 64-bit integer")
        for k, a in enumerate(self.schedule):
            where = f"schedule[{k}]"
            if a.actor not in seen:
                out.append(f"{where}: unknown actor {a.actor!r}")
            if a.target not in seen:
                out.append(f"{where}: unknown target {a.target!r}")
            if a.actor == a.target:
                out.append(f"{where}: actor and target are both {a.actor!r}")
            if not (math.isfinite(a.time) and 0 <= a.time <= self.horizon):
                out.append(f"{where}: time {a.time!r} outside [0, horizon]")
        return out


# -- JSON document <-> Scenario ------------------------------------------------


def _gompertz(raw, default: GompertzParams) -> GompertzParams:
    if raw is None:
        return default
    return GompertzParams(float(raw.get("b", default.b)), float(raw.get("c", default.c)))


def _weights(raw) -> PropertyWeights:
    if raw is None:
        return DEFAULT_WEIGHTS
    if isinstance(raw, dict):
        unknown = set(raw) - set(PROPERTY_NAMES)
        if unknown:
            raise ScenarioError([f"unknown property weights {sorted(unknown)}"])
        return PropertyWeights(**{k: float(v) for k, v in raw.items()})
    return PropertyWeights.from_sequence(raw)


def _delay(raw) -> DelayDistribution:
    if raw is None:
        return BehaviorProfile().response_delay
    if isinstance(raw, (int, float)):
        return DelayDistribution("fixed", float(raw))
    kind = raw.get("kind", "fixed")
    if kind == "fixed":
        return DelayDistribution("fixed", float(raw.get("hours", 0.0)))
    if kind == "uniform":
        return DelayDistribution("uniform", float(raw["low"]), float(raw["high"]))
    if kind == "exponential":
        return DelayDistribution("exponential", float(raw["mean"]))
    return DelayDistribution(str(kind))


def _relevance(raw) -> tuple:
    if raw is None:
        return FULLY_RELEVANT_ONLY
    if isinstance(raw, str):
        probs = [0.0] * 5
        probs[RelevanceGrade.parse(raw)] = 1.0
        return tuple(probs)
    if isinstance(raw, dict):
        probs = [0.0] * 5
        for k, v in raw.items():
            probs[RelevanceGrade.parse(k)] += float(v)
        return tuple(probs)
    return tuple(float(p) for p in raw)


def _grant(raw) -> GrantPolicy:
    if raw is None:
        return GrantPolicy()
    if isinstance(raw, int):
        return GrantPolicy(level=raw)
    return GrantPolicy(
        level=int(raw.get("level", raw.get("r", 9))),
        r_min=int(raw.get("r_min", 0)),
        r_max=int(raw.get("r_max", 10)),
        per_requester={str(k): int(v) for k, v in raw.get("per_requester", {}).items()},
    )


def _behavior(raw) -> BehaviorProfile:
    raw = raw or {}
    return BehaviorProfile(
        respond_probability=float(raw.get("respond_probability", 1.0)),
        response_delay=_delay(raw.get("response_delay")),
        relevance_distribution=_relevance(raw.get("relevance_distribution")),
        granted_level=_grant(raw.get("granted_level")),
    )


def _node(raw: dict) -> NodeConfig:
    if "id" not in raw:
        raise ScenarioError(["node entry without an id"])
    node_id = raw["id"]
    if "disclosure_threshold" not in raw:
        raise ScenarioError([f"node {node_id!r}: disclosure_threshold is required"])
    gompertz = raw.get("gompertz", {})
    control = raw.get("control")
    return NodeConfig(
        id=node_id,
        disclosure_threshold=float(raw["disclosure_threshold"]),
        weights=_weights(raw.get("weights")),
        response_params=_gompertz(gompertz.get("response"), DEFAULT_RESPONSE_PARAMS),
        gap_params=_gompertz(gompertz.get("gap"), DEFAULT_GAP_PARAMS),
        familiarity_params=_gompertz(gompertz.get("familiarity"), DEFAULT_FAMILIARITY_PARAMS),
        interaction_threshold=float(raw.get("interaction_threshold", DEFAULT_INTERACTION_THRESHOLD)),
        t_min=raw.get("t_min", DEFAULT_T_MIN),
        control=DEFAULT_CONTROL if control is None else ControlModel.from_records(control),
        control_overrides={str(k): ControlModel.from_records(v) for k, v in raw.get("control_overrides", {}).items()},
        wait_hours=float(raw.get("wait_hours", DEFAULT_WAIT_HOURS)),
        retry_count=raw.get("retry_count", 0),
        behavior=_behavior(raw.get("behavior")),
    )


def _action(raw: dict, k: int) -> ScheduledAction:
    try:
        kind = ActionKind(raw["action"])
    except (KeyError, ValueError):
        raise ScenarioError([f"schedule[{k}]: action must be one of {[a.value for a in ActionKind]}"])
    try:
        return ScheduledAction(float(raw["t"]), str(raw["actor"]), kind, str(raw["target"]))
    except KeyError as exc:
        raise ScenarioError([f"schedule[{k}]: missing field {exc}"])


def scenario_from_dict(doc: dict[str, Any]) -> Scenario:
    """Build and validate a scenario, collecting every problem before raising."""
    if not isinstance(doc, dict):
        raise ScenarioError(["scenario document must be a JSON object"])
    problems: list[str] = []
    unknown = set(doc) - {"nodes", "schedule", "horizon_hours", "seed", "options", "description"}
    if unknown:
        problems.append(f"unknown top-level keys {sorted(unknown)}")
    nodes = []
    for k, raw in enumerate(doc.get("nodes", [])):
        try:
            nodes.append(_node(raw))
        except ScenarioError as exc:
            problems += exc.problems
        except (PeerTrustError, TypeError, ValueError, KeyError, AttributeError) as exc:
            problems.append(f"nodes[{k}]: {exc}")
    schedule = []
    for k, raw in enumerate(doc.get("schedule", [])):
        try:
            schedule.append(_action(raw, k))
        except ScenarioError as exc:
            problems += exc.problems
        except (TypeError, ValueError, AttributeError) as exc:
            problems.append(f"schedule[{k}]: {exc}")
    options = doc.get("options", {}) or {}
    try:
        candidate = Scenario.__new__(Scenario)
        object.__setattr__(candidate, "nodes", tuple(nodes))
        object.__setattr__(candidate, "schedule", tuple(schedule))
        object.__setattr__(candidate, "horizon", doc.get("horizon_hours", 0.0))
        object.__setattr__(candidate, "seed", doc.get("seed", 0))
        object.__setattr__(candidate, "score_opinion_responses", bool(options.get("score_opinion_responses", False)))
        problems += candidate.problems()
    except (TypeError, ValueError) as exc:
        problems.append(str(exc))
    if problems:
        raise ScenarioError(problems)
    return Scenario(
        tuple(nodes),
        tuple(schedule),
        float(doc.get("horizon_hours", 0.0)),
        int(doc.get("seed", 0)),
        bool(options.get("score_opinion_responses", False)),
    )


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError([f"{path}: not valid JSON ({exc})"]) from exc
    return scenario_from_dict(doc)


def bundled_scenario_path(name: str) -> Path:
    return Path(__file__).resolve().parent.parent / "scenarios" / f"{name}.json"
