import json
from pathlib import Path

import pytest

from peertrust.sim import scenario_from_dict

_results = []


def node(node_id, respond=1.0, delay=0.0, relevance="fully", level=10, **extra):
    behavior = {
        "respond_probability": respond,
        "response_delay": delay if isinstance(delay, dict) else {"kind": "fixed", "hours": delay},
        "relevance_distribution": relevance,
        "granted_level": {"level": level, "r_min": 0, "r_max": 10},
    }
    cfg = {"id": node_id, "disclosure_threshold": 1.0, "behavior": behavior}
    cfg.update(extra)
    return cfg


def scenario(nodes, schedule, horizon=1000.0, seed=1, **options):
    return scenario_from_dict({"nodes": nodes, "schedule": schedule, "horizon_hours": horizon, "seed": seed,
                               "options": options})


def act(t, actor, target, action="data_request"):
    return {"t": t, "actor": actor, "action": action, "target": target}


def stochastic_community(n_nodes=20, n_actions=1000, seed=1, horizon=2000.0, span=0.9):
    import numpy as np

    rng = np.random.default_rng(12345)
    nodes = []
    for k in range(n_nodes):
        nodes.append(node(
            f"n{k:02d}",
            respond=float(rng.uniform(0.3, 1.0)),
            delay={"kind": "exponential", "mean": float(rng.uniform(1, 20))},
            relevance=[float(x) for x in rng.dirichlet(np.ones(5))],
            level=int(rng.integers(0, 11)),
            t_min=int(rng.integers(2, 8)),
            wait_hours=30.0,
            retry_count=int(rng.integers(0, 2)),
        ))
    schedule = []
    times = np.sort(rng.uniform(0, horizon * span, n_actions))
    for t in times:
        i, j = rng.choice(n_nodes, 2, replace=False)
        kind = rng.choice(["data_request"] * 8 + ["trust_query", "confidence_query"])
        schedule.append(act(float(t), f"n{i:02d}", f"n{j:02d}", str(kind)))
    return {"nodes": nodes, "schedule": schedule, "horizon_hours": horizon, "seed": seed, "options": {}}


@pytest.fixture
def bundled_good_vs_bad():
    from peertrust.sim import bundled_scenario_path

    return json.loads(Path(bundled_scenario_path("good_vs_bad")).read_text())


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        crit = getattr(report, "_criterion", None)
        if crit is not None:
            _results.append((crit, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcome in sorted(_results):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
