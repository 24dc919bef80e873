"""Acceptance gate. Each test is one criterion; a summary line per criterion prints at the end of the run."""

import math
import time

import numpy as np
import pytest

from peertrust.confidence import DEFAULT_CONTROL, ControlModel, ControlParameter, confidence, control_value, \
    decide_disclosure
from peertrust.ledger import OpinionTable
from peertrust.scoring import (
    DEFAULT_FAMILIARITY_PARAMS,
    DEFAULT_GAP_PARAMS,
    DEFAULT_RESPONSE_PARAMS,
    Classification,
    GompertzParams,
    InteractionInputs,
    PropertyWeights,
    RelevanceGrade,
    aggregate_score,
    classify_interaction,
    familiarity_score,
    relevance_score,
    response_time_score,
    time_gap_score,
)
from peertrust.sim import bundled_scenario_path, load_scenario, run_scenario, scenario_from_dict, trace_digest
from peertrust.trust import combine_otimes

from conftest import stochastic_community
from oracles import fold_log


@pytest.mark.criterion(1, "worked example: I = 0.7894 +/- 5e-4, Positive at threshold 0.5")
def test_worked_example():
    score = aggregate_score(InteractionInputs(), PropertyWeights())
    assert abs(score.aggregate - 0.7894) <= 5e-4
    assert classify_interaction(score.aggregate, 0.5) is Classification.POSITIVE


@pytest.mark.criterion(2, "relevance grades map exactly to 0, .25, .5, .75, 1")
def test_relevance_table():
    expected = {
        RelevanceGrade.NOT_AT_ALL_RELEVANT: 0.00,
        RelevanceGrade.MAY_NOT_BE_RELEVANT: 0.25,
        RelevanceGrade.CANT_SAY: 0.50,
        RelevanceGrade.TO_SOME_EXTENT_RELEVANT: 0.75,
        RelevanceGrade.FULLY_RELEVANT: 1.00,
    }
    assert len(RelevanceGrade) == 5
    assert {g: relevance_score(g) for g in RelevanceGrade} == expected


@pytest.mark.criterion(3, "curves: range, monotonicity and endpoint limits over 1000 samples (1e-8)")
def test_curve_properties():
    rng = np.random.default_rng(2024)
    # b <= 30 keeps 1 - exp(-b) strictly below 1.0 in double precision
    b = rng.uniform(0.5, 30.0, 1000)
    c = rng.uniform(0.05, 3.0, 1000)
    t1 = rng.uniform(0.0, 25.0, 1000) / c
    t2 = t1 + rng.uniform(0.01, 5.0, 1000) / c
    for k in range(1000):
        p = GompertzParams(b[k], c[k])
        for decay in (response_time_score, time_gap_score):
            hi, lo = decay(p, t1[k]), decay(p, t2[k])
            assert 0.0 < lo < hi < 1.0
            assert abs(decay(p, 0.0) - (1.0 - math.exp(-b[k]))) <= 1e-8
            far = (math.log(b[k]) + 25.0) / c[k]
            assert abs(decay(p, far)) <= 1e-8
        lo, hi = familiarity_score(p, t1[k]), familiarity_score(p, t2[k])
        assert 0.0 < lo < hi < 1.0
        assert abs(familiarity_score(p, 0.0) - math.exp(-b[k])) <= 1e-8
        assert abs(familiarity_score(p, (math.log(b[k]) + 25.0) / c[k]) - 1.0) <= 1e-8


def _random_log(rng, length):
    peers = ["b", "c", "d", "e"]
    outstanding = dict.fromkeys(peers, 0)
    log = []
    for _ in range(length):
        peer = peers[rng.integers(len(peers))]
        if outstanding[peer] and rng.random() < 0.6:
            log.append(("outcome", peer, "Positive" if rng.random() < 0.5 else "Negative"))
            outstanding[peer] -= 1
        else:
            log.append(("request", peer))
            outstanding[peer] += 1
    return log


@pytest.mark.criterion(4, "ledger replay equals brute-force fold on 500 sequences; bounds hold; < 5 s")
def test_opinion_arithmetic():
    rng = np.random.default_rng(4)
    start = time.perf_counter()
    for _ in range(500):
        log = _random_log(rng, int(rng.integers(0, 201)))
        table = OpinionTable("a")
        for k, item in enumerate(log):
            if item[0] == "request":
                e = table.record_request(item[1], float(k))
            else:
                e = table.record_outcome(item[1], Classification(item[2]), float(k))
            assert -1.0 <= e.opinion <= 1.0 and 0.0 <= e.weight <= 1.0
        oracle = fold_log(log)
        assert set(oracle) == set(table.entries)
        for peer, (p, n, t, op, w) in oracle.items():
            e = table.entry(peer)
            assert e.counts() == (p, n, t) and e.opinion == float(op) and e.weight == float(w)
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(5, "otimes grid at 0.1: outputs in [-1,1], zero rows defer, opposites conflict")
def test_otimes_grid():
    grid = [k / 10 for k in range(-10, 11)]
    for p in grid:
        for c in grid:
            trust, conflict = combine_otimes(p, c)
            assert -1.0 <= trust <= 1.0
        assert combine_otimes(0.0, p) == (p, False)
        assert combine_otimes(p, 0.0) == (p, False)
        if p != 0.0:
            assert combine_otimes(p, -p) == (0.0, True)


@pytest.mark.criterion(6, "control 0.75 for the default model; confidence in [-1,2]; disclosure monotone")
def test_control_confidence():
    assert abs(control_value(DEFAULT_CONTROL) - 0.75) <= 1e-12
    rng = np.random.default_rng(6)
    for _ in range(1000):
        q = int(rng.integers(1, 6))
        w = rng.dirichlet(np.ones(q))
        model = ControlModel(tuple(ControlParameter(f"c{k}", float(rng.random()), float(w[k])) for k in range(q)))
        cl = control_value(model)
        trust = float(rng.uniform(-1, 1))
        cf = confidence(trust, cl)
        assert 0.0 <= cl <= 1.0 and -1.0 <= cf <= 2.0
        a, b = sorted(rng.uniform(-1, 2, 2))
        threshold = float(rng.uniform(-1, 2))
        assert decide_disclosure(a, threshold) <= decide_disclosure(b, threshold)
        lo_t, hi_t = sorted(rng.uniform(-1, 2, 2))
        assert decide_disclosure(cf, hi_t) <= decide_disclosure(cf, lo_t)


@pytest.mark.criterion(7, "20 nodes, 1000 scheduled actions, 10 runs: one digest, < 10 s")
def test_simulator_determinism():
    doc = stochastic_community(n_nodes=20, n_actions=1000, seed=99)
    start = time.perf_counter()
    digests = {trace_digest(run_scenario(scenario_from_dict(doc))) for _ in range(10)}
    elapsed = time.perf_counter() - start
    assert len(digests) == 1
    assert elapsed < 10.0, elapsed


@pytest.mark.criterion(8, "good-vs-bad: Op^p = 1, -1, 0 exactly; observer's report sets the trust sign")
def test_behavioral_limits():
    scenario = load_scenario(bundled_scenario_path("good_vs_bad"))
    trace = run_scenario(scenario)
    alice = trace.final_tables["alice"]
    assert alice.opinion("good") == 1.0
    assert alice.opinion("bad") == -1.0
    assert alice.opinion("silent") == 0.0

    t_min = scenario.node("alice").t_min
    checked = 0
    for assessed in (e for e in trace.events if e.kind == "TrustAssessed" and e.peer in ("newcomer", "shady")):
        qid = assessed.payload["query"]
        [report] = [e for e in trace.events
                    if e.kind == "OpinionReported" and e.payload["query"] == qid and e.actor == "observer"]
        assert alice.entry(assessed.peer).total < t_min
        assert assessed.payload["personal"] == 0.0
        assert report.payload["opinion"] != 0.0
        assert math.copysign(1, assessed.payload["trust"]) == math.copysign(1, report.payload["opinion"])
        assert assessed.payload["trust"] != 0.0
        checked += 1
    assert checked == 2


@pytest.mark.criterion(9, "every reported number is reproduced: defaults are the published tables")
def test_paper_numbers_covered():
    assert PropertyWeights().as_tuple() == (0.2, 0.1, 0.3, 0.3, 0.1)
    assert (DEFAULT_RESPONSE_PARAMS.b, DEFAULT_RESPONSE_PARAMS.c) == (500.0, 0.5)
    assert (DEFAULT_GAP_PARAMS.b, DEFAULT_GAP_PARAMS.c) == (10.0, 0.25)
    assert (DEFAULT_FAMILIARITY_PARAMS.b, DEFAULT_FAMILIARITY_PARAMS.c) == (10.0, 2.5)
    assert [(p.confidence, p.weight) for p in DEFAULT_CONTROL.parameters] == [(1.0, 0.2), (0.8, 0.5), (0.5, 0.3)]
    inputs = InteractionInputs()
    assert (inputs.response_elapsed, inputs.gap_since_previous, inputs.acquaintance_age) == (10.0, 5.0, 1.0)
    assert (inputs.privilege.r, inputs.privilege.r_max) == (9, 10)
    assert inputs.relevance is RelevanceGrade.FULLY_RELEVANT
