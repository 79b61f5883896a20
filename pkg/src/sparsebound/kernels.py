"""Batch estimator kernels: numba fast path with a pure-numpy fallback.

These are the hot inner loops of the Monte Carlo harness; each maps a
(trials, n) observation block to a (trials, n) estimate block.  The backend
is fixed once at import time: numba is used when it is importable and the
``SPARSEBOUND_NO_NUMBA`` environment variable is unset (or "0"), otherwise
the numpy implementations run.  Both backends implement identical contracts
and agree to floating-point round-off; ``benchmarks/bench_backends.py``
times them against each other.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env-flag fallback
    HAVE_NUMBA = False

NUMBA_DISABLED = os.environ.get("SPARSEBOUND_NO_NUMBA", "").strip() not in ("", "0")
BACKEND = "numba" if (HAVE_NUMBA and not NUMBA_DISABLED) else "numpy"


# -- pure-numpy implementations (always importable) --------------------------

def numpy_ml_batch(y: np.ndarray, s: int) -> np.ndarray:
    """Keep the s largest-magnitude entries of each row, zero the rest.

    Ties broken by lower index (stable sort on descending magnitude).
    """
    order = np.argsort(-np.abs(y), axis=1, kind="stable")[:, :s]
    out = np.zeros_like(y)
    rows = np.arange(y.shape[0])[:, None]
    out[rows, order] = y[rows, order]
    return out


def numpy_ht_batch(y: np.ndarray, threshold: float) -> np.ndarray:
    """Zero every entry with magnitude strictly below the threshold."""
    return np.where(np.abs(y) >= threshold, y, 0.0)


def numpy_oracle_batch(y: np.ndarray, support_idx: np.ndarray,
                       scaled_vals: np.ndarray) -> np.ndarray:
    """Oracle correction: off-support entries damped by 1 - prod(tanh scores).

    ``scaled_vals`` holds the support entries of the anchor divided by the
    noise variance, so the per-row score product is
    prod_l tanh(y_l * scaled_vals[l]).
    """
    scores = np.tanh(y[:, support_idx] * scaled_vals)
    damp = 1.0 - np.prod(scores, axis=1)
    out = y * damp[:, None]
    out[:, support_idx] = y[:, support_idx]
    return out


# -- numba implementations ----------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _ml_core(y, s, out):
        trials, n = y.shape
        for t in range(trials):
            taken = np.zeros(n, dtype=np.bool_)
            for _ in range(s):
                best = 0
                best_mag = -1.0
                for j in range(n):
                    if not taken[j]:
                        mag = abs(y[t, j])
                        if mag > best_mag:
                            best_mag = mag
                            best = j
                taken[best] = True
                out[t, best] = y[t, best]

    @njit(cache=True)
    def _ht_core(y, threshold, out):
        trials, n = y.shape
        for t in range(trials):
            for j in range(n):
                v = y[t, j]
                if abs(v) >= threshold:
                    out[t, j] = v

    @njit(cache=True)
    def _oracle_core(y, support_idx, scaled_vals, out):
        trials, n = y.shape
        k = support_idx.size
        for t in range(trials):
            prod = 1.0
            for m in range(k):
                prod *= math.tanh(y[t, support_idx[m]] * scaled_vals[m])
            damp = 1.0 - prod
            for j in range(n):
                out[t, j] = y[t, j] * damp
            for m in range(k):
                j = support_idx[m]
                out[t, j] = y[t, j]

    def numba_ml_batch(y: np.ndarray, s: int) -> np.ndarray:
        out = np.zeros_like(y)
        _ml_core(np.ascontiguousarray(y), s, out)
        return out

    def numba_ht_batch(y: np.ndarray, threshold: float) -> np.ndarray:
        out = np.zeros_like(y)
        _ht_core(np.ascontiguousarray(y), threshold, out)
        return out

    def numba_oracle_batch(y: np.ndarray, support_idx: np.ndarray,
                           scaled_vals: np.ndarray) -> np.ndarray:
        out = np.empty_like(y)
        _oracle_core(np.ascontiguousarray(y), support_idx, scaled_vals, out)
        return out

else:
    numba_ml_batch = None
    numba_ht_batch = None
    numba_oracle_batch = None


if BACKEND == "numba":
    ml_batch = numba_ml_batch
    ht_batch = numba_ht_batch
    oracle_batch = numba_oracle_batch
else:
    ml_batch = numpy_ml_batch
    ht_batch = numpy_ht_batch
    oracle_batch = numpy_oracle_batch
