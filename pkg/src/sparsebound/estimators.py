"""Estimators mapping an observation to a length-n estimate.

All four accept ``y`` as a single vector of length n or as a (trials, n)
batch and return the matching shape.  Estimates are plain float64 arrays and
are not constrained to be sparse (only ``max_likelihood`` and, for large
thresholds, ``hard_threshold`` produce sparse outputs).
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .core import ModelConfig, ParamVector
from .errors import DimensionMismatch, OracleMismatch

ESTIMATOR_NAMES = ("ls", "ml", "ht", "oracle")


def _as_batch(y) -> tuple[np.ndarray, bool]:
    arr = np.asarray(y, dtype=np.float64)
    if arr.ndim == 1:
        return arr[None, :], True
    if arr.ndim == 2:
        return arr, False
    raise DimensionMismatch(f"observation must be 1-d or 2-d, got shape {arr.shape}")


def least_squares(y) -> np.ndarray:
    """The identity estimate ``x_hat = y`` (unbiased, MSE equal to n*sigma^2)."""
    return np.array(y, dtype=np.float64, copy=True)


def max_likelihood(y, s: int) -> np.ndarray:
    """Keep the s largest-magnitude entries of y, zero the rest.

    Ties broken by lower index so repeated calls are deterministic.
    """
    batch, single = _as_batch(y)
    if not 1 <= s <= batch.shape[1]:
        raise ValueError(f"sparsity must satisfy 1 <= s <= {batch.shape[1]}, got {s}")
    out = kernels.ml_batch(batch, s)
    return out[0] if single else out


def hard_threshold(y, threshold: float) -> np.ndarray:
    """Zero entries with |y_k| < threshold, keep the rest (|y_k| = threshold kept)."""
    if threshold < 0:
        raise ValueError(f"threshold must be nonnegative, got {threshold}")
    batch, single = _as_batch(y)
    out = kernels.ht_batch(batch, float(threshold))
    return out[0] if single else out


def default_threshold(model: ModelConfig) -> float:
    """The universal threshold sigma * sqrt(2 ln n) (natural logarithm)."""
    return model.sigma * math.sqrt(2.0 * math.log(model.n))


def constrained_oracle(y, x0: ParamVector, sigma: float, s: int | None = None) -> np.ndarray:
    """Genie-aided estimator built from the anchor parameter ``x0``.

    On the support of x0 the estimate is y_k itself; off the support it is

        x_hat_k = y_k * (1 - prod_{l in supp(x0)} tanh(y_l * x0_l / sigma^2)),

    evaluated directly for every real y.  Its MSE at x0 equals the
    closed-form constrained Barankin bound, and it is unbiased at every
    parameter with at most ``s`` nonzero entries.  The construction requires
    the anchor to have exactly ``s`` nonzero entries; pass ``s`` to have that
    checked (OracleMismatch on violation).
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if s is not None and x0.norm0 != s:
        raise OracleMismatch(
            f"anchor has {x0.norm0} nonzero entries, the oracle construction needs exactly {s}"
        )
    batch, single = _as_batch(y)
    if batch.shape[1] != x0.n:
        raise DimensionMismatch(f"observation length {batch.shape[1]} != anchor length {x0.n}")
    idx = np.asarray(x0.support, dtype=np.int64)
    scaled = x0.values[idx] / (sigma * sigma)
    out = kernels.oracle_batch(batch, idx, scaled)
    return out[0] if single else out


def make_estimator(name: str, model: ModelConfig, x0: ParamVector | None = None):
    """Bind an estimator name to its side information; returns a y -> x_hat callable.

    Names: "ls", "ml", "ht" (universal threshold), "oracle" (requires x0).
    """
    if name == "ls":
        return least_squares
    if name == "ml":
        return lambda y: max_likelihood(y, model.s)
    if name == "ht":
        threshold = default_threshold(model)
        return lambda y: hard_threshold(y, threshold)
    if name == "oracle":
        if x0 is None:
            raise ValueError("the oracle estimator needs the anchor parameter x0")
        return lambda y: constrained_oracle(y, x0, model.sigma, s=model.s)
    raise ValueError(f"unknown estimator {name!r}, expected one of {ESTIMATOR_NAMES}")
