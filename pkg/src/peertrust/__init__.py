"""Trust and confidence for participant-driven data sharing among peers."""

from .confidence import (
    DEFAULT_CONTROL,
    ConfidenceResult,
    ControlModel,
    ControlParameter,
    confidence,
    control_value,
    decide_disclosure,
    evaluate_confidence,
)
from .ledger import OpinionEntry, OpinionTable, node_weight, personal_opinion
from .scoring import (
    Classification,
    GompertzParams,
    InteractionInputs,
    InteractionScore,
    PrivilegeLevel,
    PropertyWeights,
    RelevanceGrade,
    aggregate_score,
    classify_interaction,
    familiarity_score,
    reciprocity_score,
    relevance_score,
    response_time_score,
    score_interaction,
    time_gap_score,
)
from .trust import Basis, OpinionReport, TrustAssessment, assess_trust, combine_otimes, community_opinion

__version__ = "0.1.0"
