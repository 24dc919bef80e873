"""numba-compiled kernels. Same contracts and accumulation order as ``_numpy``."""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _decay(b, c, t):
    out = np.empty(t.shape[0])
    for i in range(t.shape[0]):
        out[i] = -math.expm1(-b[i] * math.exp(-c[i] * t[i]))
    return out


@njit(cache=True, nogil=True)
def _growth(b, c, t):
    out = np.empty(t.shape[0])
    for i in range(t.shape[0]):
        out[i] = math.exp(-b[i] * math.exp(-c[i] * t[i]))
    return out


def _flat3(b, c, t):
    b, c, t = np.broadcast_arrays(np.asarray(b, float), np.asarray(c, float), np.asarray(t, float))
    shape = t.shape
    return shape, np.ascontiguousarray(b).ravel(), np.ascontiguousarray(c).ravel(), np.ascontiguousarray(t).ravel()


def gompertz_decay(b, c, t):
    shape, b, c, t = _flat3(b, c, t)
    return _decay(b, c, t).reshape(shape)


def gompertz_growth(b, c, t):
    shape, b, c, t = _flat3(b, c, t)
    return _growth(b, c, t).reshape(shape)


@njit(cache=True, nogil=True)
def _aggregate(scores, weights):
    n, m = scores.shape
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for k in range(m):
            acc += weights[k] * scores[i, k]
        out[i] = min(1.0, max(0.0, acc))
    return out


def aggregate_scores(scores, weights):
    return _aggregate(np.ascontiguousarray(scores, dtype=float), np.ascontiguousarray(weights, dtype=float))


@njit(cache=True, nogil=True)
def _opinions(pos, neg, tot):
    n = pos.shape[0]
    op = np.zeros((n, n))
    w = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                op[i, j] = 1.0
                w[i, j] = 1.0
                continue
            if tot[i, j] > 0:
                op[i, j] = (pos[i, j] - neg[i, j]) / tot[i, j]
            if pos[i, j] > neg[i, j]:
                w[i, j] = op[i, j]
    return op, w


def opinion_matrices(pos, neg, tot):
    return _opinions(
        np.ascontiguousarray(pos, dtype=np.int64),
        np.ascontiguousarray(neg, dtype=np.int64),
        np.ascontiguousarray(tot, dtype=np.int64),
    )


@njit(cache=True, nogil=True)
def _otimes(p, c):
    if p == 0.0:
        return c, False
    if c == 0.0:
        return p, False
    ap = abs(p)
    ac = abs(c)
    if ap > ac:
        return p, False
    if ap < ac:
        return c, False
    if p == c:
        return p, False
    return 0.0, True


@njit(cache=True, nogil=True)
def _otimes_array(p, c):
    n = p.shape[0]
    trust = np.empty(n)
    conflict = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        trust[i], conflict[i] = _otimes(p[i], c[i])
    return trust, conflict


def combine_otimes(personal, community):
    p, c = np.broadcast_arrays(np.asarray(personal, float), np.asarray(community, float))
    shape = p.shape
    trust, conflict = _otimes_array(np.ascontiguousarray(p).ravel(), np.ascontiguousarray(c).ravel())
    return trust.reshape(shape), conflict.reshape(shape)


@njit(cache=True, nogil=True)
def _trust(pos, neg, tot, t_min, responders):
    op, w = _opinions(pos, neg, tot)
    n = op.shape[0]
    community = np.zeros((n, n))
    trust = np.zeros((n, n))
    conflict = np.zeros((n, n), dtype=np.bool_)
    combined = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i == j:
                trust[i, j] = 1.0
                continue
            acc = 0.0
            count = 0
            for x in range(n):
                if x == i or x == j or not responders[i, x]:
                    continue
                acc += w[i, x] * op[x, j]
                count += 1
            if count > 0:
                community[i, j] = acc / count
            if tot[i, j] >= t_min[i]:
                trust[i, j] = op[i, j]
            else:
                combined[i, j] = True
                trust[i, j], conflict[i, j] = _otimes(op[i, j], community[i, j])
    return op, community, trust, conflict, combined


def trust_matrix(pos, neg, tot, t_min, responders):
    """All-pairs trust for a community; see ``_numpy.trust_matrix``."""
    return _trust(
        np.ascontiguousarray(pos, dtype=np.int64),
        np.ascontiguousarray(neg, dtype=np.int64),
        np.ascontiguousarray(tot, dtype=np.int64),
        np.ascontiguousarray(t_min, dtype=np.int64),
        np.ascontiguousarray(responders, dtype=np.bool_),
    )
