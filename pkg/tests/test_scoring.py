import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from peertrust.errors import DegenerateScaleError, DomainError, WeightError
from peertrust.scoring import (
    Classification,
    GompertzParams,
    InteractionInputs,
    PrivilegeLevel,
    PropertyWeights,
    RelevanceGrade,
    aggregate_score,
    classify_interaction,
    familiarity_score,
    reciprocity_score,
    relevance_score,
    response_time_score,
    time_gap_score,
)

from oracles import gompertz_decay_mp, gompertz_growth_mp

RESP = GompertzParams(500, 0.5)
GAP = GompertzParams(10, 0.25)
FAM = GompertzParams(10, 2.5)


@pytest.mark.parametrize(
    "fn, params, t, oracle, expected",
    [
        (response_time_score, RESP, 10, gompertz_decay_mp, 0.9656),
        (time_gap_score, GAP, 5, gompertz_decay_mp, 0.9430),
        (familiarity_score, FAM, 1, gompertz_growth_mp, 0.4401),
    ],
)
def test_curve_examples(fn, params, t, oracle, expected):
    value = fn(params, t)
    assert value == pytest.approx(oracle(params.b, params.c, t), abs=1e-15)
    assert value == pytest.approx(expected, abs=5e-4)


def test_curve_limits():
    assert response_time_score(RESP, 0) == pytest.approx(1 - math.exp(-500), abs=1e-12)
    assert response_time_score(RESP, 40) < 1e-5
    assert time_gap_score(GAP, 0) == pytest.approx(1 - math.exp(-10), abs=1e-15)
    assert time_gap_score(GAP, 60) < 1e-5
    assert familiarity_score(FAM, 0) == pytest.approx(math.exp(-10), rel=1e-12)
    assert familiarity_score(FAM, 10) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("fn", [response_time_score, time_gap_score, familiarity_score])
@pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
def test_curves_reject_bad_time(fn, bad):
    with pytest.raises(DomainError):
        fn(GAP, bad)


@pytest.mark.parametrize("b, c", [(0, 1), (1, 0), (-1, 1), (float("nan"), 1)])
def test_gompertz_params_validated(b, c):
    with pytest.raises(DomainError):
        GompertzParams(b, c)


# above b ~ 36.7, 1 - exp(-b) rounds to exactly 1.0 in double precision
b_st = st.floats(0.5, 30)
c_st = st.floats(0.05, 3)


@given(b=b_st, c=c_st, u=st.floats(0, 25), v=st.floats(0.01, 5))
def test_curve_range_and_monotonicity(b, c, u, v):
    p = GompertzParams(b, c)
    t1 = u / c
    t2 = t1 + v / c
    for decay in (response_time_score, time_gap_score):
        a, z = decay(p, t1), decay(p, t2)
        assert 0 < z < a < 1
    a, z = familiarity_score(p, t1), familiarity_score(p, t2)
    assert 0 < a < z < 1


@pytest.mark.parametrize("b", [2.0, 10.0, 30.0])
@pytest.mark.parametrize("c", [0.25, 1.0, 2.5])
def test_familiarity_single_inflection(b, c):
    p = GompertzParams(b, c)
    grid = np.linspace(0, 10 / c, 2001)
    values = np.array([familiarity_score(p, t) for t in grid])
    second = np.diff(values, 2)
    signs = np.sign(second[second != 0])
    assert np.count_nonzero(np.diff(signs)) == 1


def test_reciprocity():
    assert reciprocity_score(PrivilegeLevel(9, 0, 10)) == pytest.approx(0.9)
    assert reciprocity_score(PrivilegeLevel(0, 0, 10)) == 0.0
    assert reciprocity_score(PrivilegeLevel(10, 0, 10)) == 1.0
    assert reciprocity_score(PrivilegeLevel(3, 1, 5)) == 0.5


def test_privilege_validation():
    with pytest.raises(DegenerateScaleError):
        PrivilegeLevel(3, 3, 3)
    with pytest.raises(DomainError):
        PrivilegeLevel(11, 0, 10)
    with pytest.raises(DomainError):
        PrivilegeLevel(1, 5, 2)


def test_relevance_table():
    assert [relevance_score(g) for g in RelevanceGrade] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert RelevanceGrade.parse("fully") is RelevanceGrade.FULLY_RELEVANT
    assert RelevanceGrade.parse("Can't say") is RelevanceGrade.CANT_SAY
    assert RelevanceGrade.parse("not_at_all") is RelevanceGrade.NOT_AT_ALL_RELEVANT
    with pytest.raises(DomainError):
        RelevanceGrade.parse("somewhat")


def test_worked_example():
    score = aggregate_score(InteractionInputs(), PropertyWeights())
    assert score.aggregate == pytest.approx(0.7894, abs=5e-4)
    assert score.scores[3] == pytest.approx(0.9)
    assert classify_interaction(score.aggregate, 0.5) is Classification.POSITIVE


def test_aggregate_all_ones():
    inputs = InteractionInputs(0.0, 0.0, 1e6, PrivilegeLevel(10), RelevanceGrade.FULLY_RELEVANT,
                               GompertzParams(800, 1), GompertzParams(800, 1), GompertzParams(1, 1))
    for w in [PropertyWeights(), PropertyWeights(0.2, 0.2, 0.2, 0.2, 0.2), PropertyWeights(1, 0, 0, 0, 0)]:
        assert aggregate_score(inputs, w).aggregate == 1.0


weights_st = st.lists(st.floats(0.0, 1.0), min_size=5, max_size=5).filter(lambda w: sum(w) > 0.1).map(
    lambda w: [x / math.fsum(w) for x in w]
)


@given(
    weights=weights_st,
    elapsed=st.floats(0, 100), gap=st.floats(0, 100), age=st.floats(0, 20),
    r=st.integers(0, 10), grade=st.sampled_from(list(RelevanceGrade)),
)
def test_aggregate_is_dot_product(weights, elapsed, gap, age, r, grade):
    try:
        w = PropertyWeights.from_sequence(weights)
    except WeightError:
        return
    score = aggregate_score(InteractionInputs(elapsed, gap, age, PrivilegeLevel(r), grade), w)
    dot = sum(a * b for a, b in zip(w.as_tuple(), score.scores))
    assert abs(score.aggregate - dot) <= 1e-12
    assert min(score.scores) - 1e-12 <= score.aggregate <= max(score.scores) + 1e-12
    assert 0.0 <= score.aggregate <= 1.0


def test_weight_normalization():
    PropertyWeights(0.2, 0.1, 0.3, 0.3, 0.1 + 5e-10)
    with pytest.raises(WeightError):
        PropertyWeights(0.2, 0.1, 0.3, 0.3, 0.1 + 2e-9)
    with pytest.raises(WeightError):
        PropertyWeights(1.2, -0.2, 0.0, 0.0, 0.0)
    with pytest.raises(WeightError):
        PropertyWeights.from_sequence([0.5, 0.5])


def test_classification_rules():
    assert classify_interaction(0.7894, 0.5) is Classification.POSITIVE
    assert classify_interaction(0.5, 0.5) is Classification.NEGATIVE
    assert classify_interaction(0.0, 0.0) is Classification.NEGATIVE
    with pytest.raises(DomainError):
        classify_interaction(1.2, 0.5)
    with pytest.raises(DomainError):
        classify_interaction(0.5, -0.1)


def test_inputs_reject_negative_times():
    with pytest.raises(DomainError):
        InteractionInputs(response_elapsed=-1)
    with pytest.raises(DomainError):
        InteractionInputs(gap_since_previous=-0.5)
