"""Single-threaded discrete-event simulation of a peer community.

Nodes send data requests to peers and score whatever comes back within their
waiting window. Trust and confidence queries broadcast an opinion request to
every other node, collect the reports that arrive within the window, then
assess trust against the trustor's own ledger.

Events are ordered by ``(time, sequence number)``. Every node draws from its
own random stream derived from ``(seed, node id)``, so adding a node leaves the
draws of the others untouched.
"""

from __future__ import annotations

import hashlib
import heapq
from collections import Counter

import numpy as np

from .. import kernels
from ..confidence import evaluate_confidence
from ..errors import QueryError
from ..ledger import OpinionTable
from ..scoring import (
    HOURS_PER_MONTH,
    HOURS_PER_YEAR,
    Classification,
    InteractionInputs,
    RelevanceGrade,
    score_interaction,
)
from ..trust import Basis, OpinionReport, TrustAssessment, assess_trust
from . import trace as tr
from .scenario import ActionKind, NodeConfig, Scenario

DATA = "data"
OPINION = "opinion"

_ACTION, _RESPONSE, _TIMEOUT, _OPINION, _CLOSE = range(5)


def node_stream(seed: int, node_id: str) -> np.random.Generator:
    key = int.from_bytes(hashlib.blake2b(node_id.encode("utf-8"), digest_size=8).digest(), "big")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(key,))))


def replay_tables(events, node_ids, until: float | None = None) -> dict[str, OpinionTable]:
    """Rebuild every opinion table from the request/response records of a trace."""
    tables = {n: OpinionTable(n) for n in node_ids}
    for e in events:
        if until is not None and e.t > until:
            break
        if e.kind == tr.REQUEST_SENT:
            tables[e.actor].record_request(e.peer, e.t)
        elif e.kind == tr.RESPONSE_RECEIVED:
            tables[e.actor].record_outcome(e.peer, Classification(e.payload["classification"]), e.t)
    return tables


class Simulation:
    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.configs: dict[str, NodeConfig] = {n.id: n for n in scenario.nodes}
        self.order = [n.id for n in scenario.nodes]
        self.tables = {n: OpinionTable(n) for n in self.order}
        self.rngs = {n: node_stream(scenario.seed, n) for n in self.order}
        self.events: list[tr.TraceEvent] = []
        self.now = 0.0
        self._queue: list = []
        self._seq = 0
        self._next_request = 0
        self._next_query = 0
        self._outstanding: dict[int, tuple] = {}
        self._queries: dict[int, dict] = {}
        for action in scenario.schedule:
            self._push(action.time, _ACTION, action)

    # -- plumbing -------------------------------------------------------------

    def _push(self, t, kind, data):
        heapq.heappush(self._queue, (t, self._seq, kind, data))
        self._seq += 1

    def _emit(self, kind, actor, peer, **payload):
        self.events.append(tr.TraceEvent(self.now, len(self.events), kind, actor, peer, payload))

    def run(self, until: float | None = None) -> "Simulation":
        """Process every queued event with time <= ``until`` (default: the horizon)."""
        horizon = self.scenario.horizon
        until = horizon if until is None else min(float(until), horizon)
        handlers = (self._on_action, self._on_response, self._on_timeout, self._on_opinion, self._on_close)
        while self._queue and self._queue[0][0] <= until:
            t, _, kind, data = heapq.heappop(self._queue)
            self.now = t
            handlers[kind](data)
        self.now = max(self.now, until)
        return self

    def pending_requests(self) -> Counter:
        return Counter((i, j) for i, j, *_ in self._outstanding.values())

    # -- requests -------------------------------------------------------------

    def _send_request(self, requester, target, channel, attempt=0, query=None):
        rid = self._next_request
        self._next_request += 1
        self.tables[requester].record_request(target, self.now)
        self._outstanding[rid] = (requester, target, channel, self.now, attempt, query)
        self._emit(tr.REQUEST_SENT, requester, target, request=rid, channel=channel, attempt=attempt)
        return rid

    def _draw_reply(self, responder):
        """Whether ``responder`` answers, and after how many hours."""
        behavior = self.configs[responder].behavior
        rng = self.rngs[responder]
        responds = rng.random() < behavior.respond_probability
        delay = behavior.response_delay.sample(rng)
        return responds, delay

    def _draw_relevance(self, responder) -> RelevanceGrade:
        cdf = np.cumsum(self.configs[responder].behavior.relevance_distribution)
        u = self.rngs[responder].random() * cdf[-1]
        return RelevanceGrade(int(min(np.searchsorted(cdf, u, side="right"), 4)))

    def _on_action(self, action):
        if action.kind is ActionKind.DATA_REQUEST:
            self._data_request(action.actor, action.target, 0)
        else:
            self._start_query(action.actor, action.target, action.kind is ActionKind.CONFIDENCE_QUERY)

    def _data_request(self, requester, target, attempt):
        rid = self._send_request(requester, target, DATA, attempt)
        responds, delay = self._draw_reply(target)
        relevance = self._draw_relevance(target)
        wait = self.configs[requester].wait_hours
        if responds and delay <= wait:
            self._push(self.now + delay, _RESPONSE, (rid, relevance))
        else:
            self._push(self.now + wait, _TIMEOUT, rid)

    def _score(self, requester, responder, sent_at, relevance):
        cfg = self.configs[requester]
        entry = self.tables[requester].entry(responder)
        elapsed = self.now - sent_at
        gap = 0.0 if entry.last_interaction_time is None else (self.now - entry.last_interaction_time) / HOURS_PER_MONTH
        age = (self.now - entry.first_contact_time) / HOURS_PER_YEAR
        privilege = self.configs[responder].behavior.granted_level.for_requester(requester)
        inputs = InteractionInputs(
            elapsed, gap, age, privilege, relevance, cfg.response_params, cfg.gap_params, cfg.familiarity_params
        )
        score = score_interaction(inputs, cfg.weights, cfg.interaction_threshold)
        return inputs, score

    def _complete(self, rid, relevance):
        requester, responder, channel, sent_at, attempt, query = self._outstanding.pop(rid)
        inputs, score = self._score(requester, responder, sent_at, relevance)
        self.tables[requester].record_outcome(responder, score.classification, self.now)
        self._emit(
            tr.RESPONSE_RECEIVED, requester, responder,
            request=rid, channel=channel, sent_at=sent_at,
            elapsed_hours=inputs.response_elapsed, gap_months=inputs.gap_since_previous,
            familiarity_years=inputs.acquaintance_age, relevance=relevance.name,
            privilege=[inputs.privilege.r, inputs.privilege.r_min, inputs.privilege.r_max],
            scores=list(score.scores), aggregate=score.aggregate, classification=score.classification.value,
        )

    def _on_response(self, data):
        rid, relevance = data
        self._complete(rid, relevance)

    def _on_timeout(self, rid):
        requester, target, channel, sent_at, attempt, query = self._outstanding.pop(rid)
        retry = channel == DATA and attempt < self.configs[requester].retry_count
        self._emit(tr.TIMEOUT, requester, target, request=rid, channel=channel, attempt=attempt, retry=retry)
        if retry:
            self._data_request(requester, target, attempt + 1)

    # -- opinion rounds -------------------------------------------------------

    def _start_query(self, trustor, subject, with_confidence):
        qid = self._next_query
        self._next_query += 1
        cfg = self.configs[trustor]
        query = {"trustor": trustor, "subject": subject, "confidence": with_confidence, "reports": {}}
        self._queries[qid] = query
        if self.tables[trustor].entry(subject).total >= cfg.t_min:
            # enough direct interactions: no community round needed
            self._close(qid)
            return
        reporters = [x for x in self.order if x not in (trustor, subject)]
        self._emit(tr.OPINION_REQUESTED, trustor, subject, query=qid, confidence=with_confidence,
                   reporters=reporters)
        scored = self.scenario.score_opinion_responses
        for x in reporters:
            rid = self._send_request(trustor, x, OPINION, query=qid) if scored else None
            responds, delay = self._draw_reply(x)
            if responds and delay <= cfg.wait_hours:
                self._push(self.now + delay, _OPINION, (qid, x, rid))
            elif scored:
                self._push(self.now + cfg.wait_hours, _TIMEOUT, rid)
        self._push(self.now + cfg.wait_hours, _CLOSE, qid)

    def _on_opinion(self, data):
        qid, reporter, rid = data
        query = self._queries[qid]
        opinion = self.tables[reporter].opinion(query["subject"])
        query["reports"][reporter] = opinion
        self._emit(tr.OPINION_REPORTED, reporter, query["subject"], query=qid, trustor=query["trustor"],
                   opinion=opinion)
        if rid is not None:
            self._complete(rid, RelevanceGrade.FULLY_RELEVANT)

    def _on_close(self, qid):
        self._close(qid)

    def _close(self, qid):
        query = self._queries.pop(qid)
        trustor, subject = query["trustor"], query["subject"]
        cfg = self.configs[trustor]
        table = self.tables[trustor]
        reports = [
            OpinionReport(x, subject, query["reports"][x], table.weight(x))
            for x in self.order if x in query["reports"]
        ]
        a = assess_trust(table.entry(subject), reports, cfg.t_min, trustor=trustor)
        self._emit(tr.TRUST_ASSESSED, trustor, subject, query=qid, personal=a.personal, community=a.community,
                   trust=a.trust, basis=a.basis.value, conflict=a.conflict, reports=len(reports))
        if query["confidence"]:
            c = evaluate_confidence(a.trust, cfg.control_for(subject), cfg.disclosure_threshold)
            self._emit(tr.DISCLOSURE_DECIDED, trustor, subject, query=qid, trust=c.trust, control=c.control,
                       confidence=c.confidence, share=c.share, threshold=c.threshold)

    # -- results --------------------------------------------------------------

    def trace(self) -> tr.SimulationTrace:
        tables = {n: t.copy() for n, t in self.tables.items()}
        matrix = snapshot_trust_matrix(self, self.now)
        return tr.SimulationTrace(list(self.events), tables, matrix)


def trust_matrix_from_tables(scenario: Scenario, tables: dict[str, OpinionTable]) -> dict:
    """Trust every node would assess for every other node if all peers answered an opinion round."""
    order = [n.id for n in scenario.nodes]
    n = len(order)
    pos = np.zeros((n, n), np.int64)
    neg = np.zeros((n, n), np.int64)
    tot = np.zeros((n, n), np.int64)
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            if i != j:
                pos[i, j], neg[i, j], tot[i, j] = tables[a].entry(b).counts()
    t_min = np.array([scenario.node(x).t_min for x in order], np.int64)
    responders = np.ones((n, n), bool)
    personal, community, trust, conflict, combined = kernels.trust_matrix(pos, neg, tot, t_min, responders)
    out = {}
    for i, a in enumerate(order):
        cfg = scenario.node(a)
        for j, b in enumerate(order):
            if i == j:
                continue
            if combined[i, j]:
                assessment = TrustAssessment(float(personal[i, j]), float(community[i, j]), float(trust[i, j]),
                                             Basis.COMBINED, bool(conflict[i, j]))
            else:
                assessment = TrustAssessment(float(personal[i, j]), None, float(trust[i, j]), Basis.PERSONAL_ONLY)
            conf = evaluate_confidence(assessment.trust, cfg.control_for(b), cfg.disclosure_threshold)
            out[(a, b)] = tr.MatrixEntry(a, b, assessment, conf)
    return out


def snapshot_trust_matrix(sim: Simulation, time: float) -> dict:
    """Trust matrix as of ``time``, rebuilt from the event log up to that instant."""
    if time > sim.now:
        raise QueryError(f"cannot snapshot at t={time}: simulation has only reached t={sim.now}")
    tables = replay_tables(sim.events, sim.order, until=time)
    return trust_matrix_from_tables(sim.scenario, tables)


def run_scenario(scenario: Scenario) -> tr.SimulationTrace:
    return Simulation(scenario).run().trace()
