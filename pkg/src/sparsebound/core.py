"""Model types and support utilities for sparse vectors observed in white noise.

The observation model is ``y = x0 + n`` where ``x0`` is a length-n real vector
with at most ``s`` nonzero entries and ``n`` is zero-mean white Gaussian noise
with known standard deviation ``sigma``.  Observations and estimates are plain
float64 numpy arrays of length n; the classes below carry the validated model
constants and parameter vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SparsityViolation

ORTHONORMALITY_TOL = 1e-10


@dataclass(frozen=True)
class ModelConfig:
    """Problem constants: ambient dimension ``n``, sparsity ``s``, noise level ``sigma``."""

    n: int
    s: int
    sigma: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ambient dimension must be positive, got n={self.n}")
        if not 1 <= self.s <= self.n:
            raise ValueError(f"sparsity must satisfy 1 <= s <= n, got s={self.s}, n={self.n}")
        if not self.sigma > 0:
            raise ValueError(f"noise standard deviation must be positive, got {self.sigma}")

    @property
    def sigma2(self) -> float:
        return self.sigma * self.sigma


def support(x, s: int | None = None, tol: float = 0.0) -> tuple[int, ...]:
    """Indices of the nonzero entries of ``x``, sorted ascending.

    Zeros are tested exactly by default; pass a small positive ``tol`` only for
    vectors produced by floating-point pipelines, in which case entries with
    magnitude <= tol count as zero.  When ``s`` is given the nonzero count is
    validated and SparsityViolation raised if it exceeds ``s``.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {arr.shape}")
    if tol > 0.0:
        nonzero = np.flatnonzero(np.abs(arr) > tol)
    else:
        nonzero = np.flatnonzero(arr)
    indices = tuple(int(i) for i in nonzero)
    if s is not None and len(indices) > s:
        raise SparsityViolation(f"vector has {len(indices)} nonzero entries, allowed at most {s}")
    return indices


class ParamVector:
    """A parameter vector together with its exact-zero support set.

    Instances are immutable: ``values`` is a read-only float64 array and
    ``support`` a sorted tuple of indices.  With ``tol > 0`` entries of
    magnitude <= tol are snapped to exact zero before the support is taken,
    so the support invariant holds for vectors from floating-point pipelines.
    """

    __slots__ = ("values", "support")

    def __init__(self, values, tol: float = 0.0):
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 1:
            raise DimensionMismatch(f"parameter vector must be 1-d, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("parameter vector entries must be finite")
        if tol > 0.0:
            arr[np.abs(arr) <= tol] = 0.0
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "support", tuple(int(i) for i in np.flatnonzero(arr)))

    def __setattr__(self, name, value):
        raise AttributeError("ParamVector is immutable")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def norm0(self) -> int:
        return len(self.support)

    def __repr__(self):
        return f"ParamVector({self.values.tolist()!r})"


def check_admissible(x0: ParamVector, model: ModelConfig) -> None:
    """Reject parameters that do not fit the model: wrong length or too dense."""
    if x0.n != model.n:
        raise DimensionMismatch(f"parameter has length {x0.n}, model expects {model.n}")
    if x0.norm0 > model.s:
        raise SparsityViolation(
            f"parameter has {x0.norm0} nonzero entries, model allows at most {model.s}"
        )


def snr_db(x0: ParamVector, model: ModelConfig) -> float:
    """Signal-to-noise ratio 10*log10(||x0||^2 / (n sigma^2)) in decibels.

    Returns -inf for the all-zero parameter (documented sentinel).
    """
    if x0.n != model.n:
        raise DimensionMismatch(f"parameter has length {x0.n}, model expects {model.n}")
    energy = float(np.dot(x0.values, x0.values))
    if energy == 0.0:
        return float("-inf")
    return 10.0 * math.log10(energy / (model.n * model.sigma2))


def s_largest_magnitude(x0: ParamVector, s: int) -> tuple[float, int]:
    """The entry of ``x0`` ranked s-th by magnitude, with its index.

    Ranking sorts magnitudes in decreasing order, ties broken by lower index.
    The signed entry is returned, not its magnitude.  When ``x0`` has fewer
    than ``s`` nonzero entries the ranked entry is an exact zero, so the
    returned value is 0.0 (the index then points at the s-th ranked slot).
    """
    if not 1 <= s <= x0.n:
        raise ValueError(f"rank must satisfy 1 <= s <= {x0.n}, got {s}")
    order = np.argsort(-np.abs(x0.values), kind="stable")
    idx = int(order[s - 1])
    return float(x0.values[idx]), idx


class OrthonormalDictionary:
    """An m x n real matrix with orthonormal columns (validated at construction)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        arr = np.array(matrix, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"dictionary must be a 2-d matrix, got shape {arr.shape}")
        m, n = arr.shape
        if m < n:
            raise DimensionMismatch(f"dictionary needs at least as many rows as columns, got {m}x{n}")
        gram = arr.T @ arr
        deviation = float(np.max(np.abs(gram - np.eye(n))))
        if deviation > ORTHONORMALITY_TOL:
            raise ValueError(
                f"columns are not orthonormal: max |H^T H - I| = {deviation:.3e} "
                f"exceeds {ORTHONORMALITY_TOL:.0e}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    def __setattr__(self, name, value):
        raise AttributeError("OrthonormalDictionary is immutable")

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]


def reduce_orthonormal(y_raw, dictionary: OrthonormalDictionary) -> np.ndarray:
    """Project a raw length-m observation onto the dictionary: ``z = H^T y``.

    For ``y = H x0 + n`` with orthonormal H the result is distributed exactly
    as the direct model ``z = x0 + n'`` with the same noise level, so all
    bounds and estimators apply to ``z`` unchanged.
    """
    y = np.asarray(y_raw, dtype=np.float64)
    if y.ndim != 1 or y.size != dictionary.m:
        raise DimensionMismatch(
            f"raw observation must be a vector of length {dictionary.m}, got shape {y.shape}"
        )
    return dictionary.matrix.T @ y
