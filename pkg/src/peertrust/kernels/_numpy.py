"""Pure-numpy kernels. Reference path and fallback when numba is unavailable."""

from __future__ import annotations

import numpy as np


def gompertz_decay(b, c, t):
    b, c, t = np.broadcast_arrays(np.asarray(b, float), np.asarray(c, float), np.asarray(t, float))
    return -np.expm1(-b * np.exp(-c * t))


def gompertz_growth(b, c, t):
    b, c, t = np.broadcast_arrays(np.asarray(b, float), np.asarray(c, float), np.asarray(t, float))
    return np.exp(-b * np.exp(-c * t))


def aggregate_scores(scores, weights):
    scores = np.asarray(scores, float)
    weights = np.asarray(weights, float)
    acc = np.zeros(scores.shape[0])
    for k in range(scores.shape[1]):
        acc += weights[k] * scores[:, k]
    return np.clip(acc, 0.0, 1.0)


def opinion_matrices(pos, neg, tot):
    pos = np.asarray(pos, np.int64)
    neg = np.asarray(neg, np.int64)
    tot = np.asarray(tot, np.int64)
    with np.errstate(divide="ignore", invalid="ignore"):
        op = np.where(tot > 0, (pos - neg) / np.where(tot > 0, tot, 1), 0.0)
    w = np.where(pos > neg, op, 0.0)
    np.fill_diagonal(op, 1.0)
    np.fill_diagonal(w, 1.0)
    return op, w


def combine_otimes(personal, community):
    p = np.asarray(personal, float)
    c = np.asarray(community, float)
    ap, ac = np.abs(p), np.abs(c)
    conflict = (p != 0.0) & (c != 0.0) & (ap == ac) & (p != c)
    trust = np.where(
        p == 0.0, c,
        np.where(c == 0.0, p,
                 np.where(ap > ac, p,
                          np.where(ap < ac, c,
                                   np.where(conflict, 0.0, p)))))
    return trust, conflict


def trust_matrix(pos, neg, tot, t_min, responders):
    """All-pairs trust for a community.

    ``responders[i, x]`` says whether node ``x`` answers node ``i``'s opinion
    round. The trustor and the subject never count as reporters.
    Reports are accumulated in ascending node order.
    """
    op, w = opinion_matrices(pos, neg, tot)
    tot = np.asarray(tot, np.int64)
    t_min = np.asarray(t_min, np.int64)
    responders = np.asarray(responders, bool)
    n = op.shape[0]
    idx = np.arange(n)
    acc = np.zeros((n, n))
    count = np.zeros((n, n), np.int64)
    for x in range(n):
        mask = responders[:, x][:, None] & (idx != x)[:, None] & (idx != x)[None, :]
        acc += np.where(mask, w[:, x][:, None] * op[x, :][None, :], 0.0)
        count += mask
    with np.errstate(divide="ignore", invalid="ignore"):
        community = np.where(count > 0, acc / np.where(count > 0, count, 1), 0.0)
    personal = op.copy()
    combined_trust, conflict = combine_otimes(personal, community)
    combined = tot < t_min[:, None]
    trust = np.where(combined, combined_trust, personal)
    conflict = conflict & combined
    np.fill_diagonal(community, 0.0)
    np.fill_diagonal(trust, 1.0)
    np.fill_diagonal(conflict, False)
    np.fill_diagonal(combined, False)
    return personal, community, trust, conflict, combined
