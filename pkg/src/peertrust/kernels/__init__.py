"""Batch kernels for scoring and all-pairs trust.

Two interchangeable backends exist: numba-compiled loops and plain numpy.
numba is used when importable unless ``PEERTRUST_DISABLE_NUMBA`` is set to a
non-empty value other than ``0``. Both backends accumulate sums in the same
order, so trust matrices agree bit for bit.
"""

from __future__ import annotations

import os

from . import _numpy as numpy_backend

_disabled = os.environ.get("PEERTRUST_DISABLE_NUMBA", "").strip() not in ("", "0")

numba_backend = None
if not _disabled:
    try:
        from . import _numba as numba_backend
    except ImportError:
        numba_backend = None

backend = numba_backend if numba_backend is not None else numpy_backend
BACKEND = "numba" if backend is numba_backend else "numpy"

gompertz_decay = backend.gompertz_decay
gompertz_growth = backend.gompertz_growth
aggregate_scores = backend.aggregate_scores
opinion_matrices = backend.opinion_matrices
combine_otimes = backend.combine_otimes
trust_matrix = backend.trust_matrix

__all__ = [
    "BACKEND",
    "aggregate_scores",
    "combine_otimes",
    "gompertz_decay",
    "gompertz_growth",
    "numba_backend",
    "numpy_backend",
    "opinion_matrices",
    "trust_matrix",
]
