"""Discrete-event community simulation."""

from .engine import Simulation, replay_tables, run_scenario, snapshot_trust_matrix, trust_matrix_from_tables
from .scenario import (
    ActionKind,
    BehaviorProfile,
    DelayDistribution,
    GrantPolicy,
    NodeConfig,
    Scenario,
    ScheduledAction,
    bundled_scenario_path,
    load_scenario,
    scenario_from_dict,
)
from .trace import MatrixEntry, SimulationTrace, TraceEvent, read_matrix_csv, trace_digest, write_matrix_csv

__all__ = [
    "ActionKind",
    "BehaviorProfile",
    "DelayDistribution",
    "GrantPolicy",
    "MatrixEntry",
    "NodeConfig",
    "Scenario",
    "ScheduledAction",
    "Simulation",
    "SimulationTrace",
    "TraceEvent",
    "bundled_scenario_path",
    "load_scenario",
    "read_matrix_csv",
    "replay_tables",
    "run_scenario",
    "scenario_from_dict",
    "snapshot_trust_matrix",
    "trace_digest",
    "trust_matrix_from_tables",
    "write_matrix_csv",
]
