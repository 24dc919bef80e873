"""Exception hierarchy shared by every module."""

from __future__ import annotations


class PeerTrustError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PeerTrustError, ValueError):
    """A numeric input lies outside the domain an operation accepts."""


class DegenerateScaleError(DomainError):
    """A privilege scale with ``r_min == r_max`` cannot be normalized."""


class WeightError(DomainError):
    """A weight vector does not sum to one."""


class ModelError(DomainError):
    """A control model violates its invariants."""


class SelfRequestError(PeerTrustError):
    """A node tried to record a request to itself."""


class ProtocolOrderError(PeerTrustError):
    """An outcome arrived with no outstanding request slot to fill."""


class AggregationError(PeerTrustError):
    """Opinion reports about different subjects were mixed together."""


class QueryError(PeerTrustError):
    """A simulation state was queried at a time it has not reached."""


class ScenarioError(PeerTrustError):
    """A scenario failed validation. ``problems`` lists every violation."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems) or "invalid scenario")
