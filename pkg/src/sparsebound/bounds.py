"""Lower and upper bounds on the MSE of unbiased estimators of a sparse parameter.

Three closed forms share the model (n, s, sigma) and an anchor x0 with at
most s nonzero entries:

  crb            s*sigma^2 when x0 has exactly s nonzeros, else n*sigma^2
  hcrb_limit     s*sigma^2 + (n-s-1)*sigma^2*exp(-xi^2/sigma^2) on the full-
                 support branch, with xi the smallest support magnitude;
                 n*sigma^2 otherwise
  constrained_barankin
                 s*sigma^2 + (n-s)*sigma^2*(1 - prod of per-entry tanh
                 expectations); an upper bound on the best unbiased MSE

and they always sandwich: crb <= hcrb_limit <= constrained_barankin.

The finite-test-point bound hcrb_finite evaluates trace(V J^+ V^T) for an
explicit test-point matrix V, where J_ij = exp(v_i.v_j/sigma^2) - 1.  The
closed forms above are its limits for the canonical point constructions as
the step t -> 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import ModelConfig, ParamVector, check_admissible, s_largest_magnitude
from .errors import (
    AnchorMismatch,
    DegenerateInput,
    DimensionMismatch,
    NumericalOverflow,
    SparsityViolation,
)
from .quadrature import expected_tanh

# exp argument above which exp(x) - 1 is no longer trustworthy in double
# precision arithmetic for the downstream pseudoinverse
OVERFLOW_LIMIT = 700.0

# relative spectral cutoff factor for the pseudoinverse: rtol = p * eps * 64
PINV_RTOL_FACTOR = 64.0


class BoundKind(enum.Enum):
    CRB = "crb"
    HCRB_LIMIT = "hcrb_limit"
    HCRB_FINITE = "hcrb_finite"
    BB_C = "bb_c"


@dataclass(frozen=True)
class BoundValue:
    """A scalar MSE bound tagged with its kind and the (anchor, sigma) it holds at."""

    value: float
    kind: BoundKind
    anchor: ParamVector
    sigma: float

    def __post_init__(self):
        if not self.value >= 0.0:
            raise ValueError(f"bound value must be nonnegative, got {self.value}")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


class TestPointSet:
    """Columns of offsets v_i with anchor + v_i admissible, anchored at one parameter.

    Admissibility (at most ``s`` nonzero entries of anchor + v_i, by exact-zero
    count) is checked for every column at construction; violating inputs are
    rejected, never truncated.
    """

    __slots__ = ("anchor", "points", "s")

    def __init__(self, anchor: ParamVector, points, s: int):
        arr = np.array(points, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"test points must form an n x p matrix, got shape {arr.shape}")
        if arr.shape[0] != anchor.n:
            raise DimensionMismatch(
                f"test points have {arr.shape[0]} rows, anchor has length {anchor.n}"
            )
        if arr.shape[1] < 1:
            raise ValueError("a test-point set needs at least one column")
        shifted = anchor.values[:, None] + arr
        counts = np.count_nonzero(shifted, axis=0)
        if np.any(counts > s):
            bad = int(np.argmax(counts > s))
            raise SparsityViolation(
                f"column {bad} shifts the anchor to {int(counts[bad])} nonzero entries, "
                f"allowed at most {s}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "points", arr)
        object.__setattr__(self, "s", int(s))

    def __setattr__(self, name, value):
        raise AttributeError("TestPointSet is immutable")

    @property
    def p(self) -> int:
        return self.points.shape[1]


def crb(x0: ParamVector, model: ModelConfig) -> BoundValue:
    """Local-unbiasedness lower bound: s*sigma^2 on full support, else n*sigma^2."""
    check_admissible(x0, model)
    if x0.norm0 == model.s:
        value = model.s * model.sigma2
    else:
        value = model.n * model.sigma2
    return BoundValue(value, BoundKind.CRB, x0, model.sigma)


def min_support_magnitude(x0: ParamVector) -> float:
    """Smallest magnitude among the nonzero entries of x0.

    Undefined for the zero vector (DegenerateInput); the bounds use their
    sparse-deficient branch there instead.
    """
    if x0.norm0 == 0:
        raise DegenerateInput("the zero vector has no support to take a minimum over")
    return float(np.min(np.abs(x0.values[list(x0.support)])))


def hcrb_limit(x0: ParamVector, model: ModelConfig) -> BoundValue:
    """Closed-form small-step limit of the finite-test-point lower bound.

    Full-support branch: s*sigma^2 + (n-s-1)*sigma^2 * exp(-xi^2/sigma^2)
    with xi = min_support_magnitude(x0).  Below-full-support branch:
    n*sigma^2.  For s == n no off-support test points exist and the bound
    equals s*sigma^2 (= n*sigma^2), matching the CRB.
    """
    check_admissible(x0, model)
    sig2 = model.sigma2
    if x0.norm0 < model.s:
        value = model.n * sig2
    elif model.s == model.n:
        value = model.s * sig2
    else:
        xi = min_support_magnitude(x0)
        value = model.s * sig2 + (model.n - model.s - 1) * sig2 * math.exp(-xi * xi / sig2)
    return BoundValue(value, BoundKind.HCRB_LIMIT, x0, model.sigma)


def build_test_points_crb(x0: ParamVector, t: float, model: ModelConfig) -> TestPointSet:
    """Axis-aligned step points whose t -> 0 bound limit is the CRB.

    Full support: one column t*e_i per support index (p = s).  Otherwise one
    column per coordinate (p = n).
    """
    if not t > 0:
        raise ValueError(f"step size must be positive, got {t}")
    check_admissible(x0, model)
    if x0.norm0 == model.s:
        indices = list(x0.support)
    else:
        indices = list(range(model.n))
    points = np.zeros((model.n, len(indices)))
    for col, i in enumerate(indices):
        points[i, col] = t
    return TestPointSet(x0, points, model.s)


def build_test_points_hcrb(x0: ParamVector, t: float, model: ModelConfig) -> TestPointSet:
    """The n-column point set whose t -> 0 bound limit is hcrb_limit.

    Support columns step along their own axis: v_i = t*e_i.  Off-support
    columns first cancel the s-th largest-magnitude entry (index k, ties to
    lower index) and then step: v_i = -x0_k*e_k + t*e_i, which keeps
    anchor + v_i admissible.  With fewer than s nonzeros the cancelled entry
    is zero and the set coincides with the CRB points over all coordinates.
    """
    if not t > 0:
        raise ValueError(f"step size must be positive, got {t}")
    check_admissible(x0, model)
    ranked_value, k = s_largest_magnitude(x0, model.s)
    in_support = set(x0.support)
    points = np.zeros((model.n, model.n))
    for i in range(model.n):
        if i in in_support:
            points[i, i] = t
        else:
            points[k, i] = -ranked_value
            points[i, i] = t
    return TestPointSet(x0, points, model.s)


def gram_matrix(points: TestPointSet, sigma: float) -> np.ndarray:
    """Likelihood-ratio Gram matrix J with J_ij = exp(v_i.v_j / sigma^2) - 1.

    Symmetric positive semidefinite.  Raises NumericalOverflow when any
    exponent exceeds OVERFLOW_LIMIT; callers should fall back to hcrb_limit.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    v = points.points
    exponents = (v.T @ v) / (sigma * sigma)
    peak = float(np.max(exponents))
    if peak > OVERFLOW_LIMIT:
        raise NumericalOverflow(
            f"test-point inner product {peak:.1f} exceeds the exp guard {OVERFLOW_LIMIT:.0f}; "
            "use hcrb_limit instead"
        )
    j = np.expm1(exponents)
    return 0.5 * (j + j.T)


def pseudoinverse(a: np.ndarray) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a symmetric matrix via eigendecomposition.

    Eigenvalues with |lambda| <= rtol * max|lambda| are treated as zero,
    rtol = p * machine_epsilon * 64.  Always defined; the input is
    symmetrized to guard against round-off asymmetry.
    """
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    sym = 0.5 * (arr + arr.T)
    eigvals, eigvecs = np.linalg.eigh(sym)
    scale = float(np.max(np.abs(eigvals))) if eigvals.size else 0.0
    cutoff = arr.shape[0] * np.finfo(np.float64).eps * PINV_RTOL_FACTOR * scale
    keep = np.abs(eigvals) > cutoff
    inv = np.zeros_like(eigvals)
    inv[keep] = 1.0 / eigvals[keep]
    return (eigvecs * inv) @ eigvecs.T


def hcrb_finite(x0: ParamVector, points: TestPointSet, sigma: float) -> BoundValue:
    """Finite-test-point lower bound trace(V J^+ V^T) at the anchor x0.

    Evaluated in equilibrated form: with d = sqrt(diag(J)) and K the unit-
    diagonal matrix J / (d d^T), the trace equals trace(W K^+ W^T) for
    W = V / d.  This is algebraically identical for nonsingular J but keeps
    the small eigenvalues that carry the bound representable when the
    diagonal of J spans many orders of magnitude (large support entries or
    small steps), where a raw pseudoinverse of J truncates them away.
    Columns with v_i = 0 contribute nothing and are dropped.
    """
    if not np.array_equal(points.anchor.values, x0.values):
        raise AnchorMismatch("test points are anchored at a different parameter")
    j = gram_matrix(points, sigma)
    diag = np.diag(j).copy()
    active = diag > 0.0
    if not np.any(active):
        return BoundValue(0.0, BoundKind.HCRB_FINITE, x0, sigma)
    d = np.sqrt(diag[active])
    k = j[np.ix_(active, active)] / np.outer(d, d)
    np.fill_diagonal(k, 1.0)
    k_pinv = pseudoinverse(k)
    w = points.points[:, active] / d
    value = float(np.sum((w @ k_pinv) * w))
    return BoundValue(max(value, 0.0), BoundKind.HCRB_FINITE, x0, sigma)


def constrained_barankin(x0: ParamVector, model: ModelConfig,
                         rel_tol: float = 1e-10) -> BoundValue:
    """Closed-form upper bound on the best unbiased MSE at x0.

    Full-support branch: s*sigma^2 + (n-s)*sigma^2 * (1 - prod over the
    support of expected_tanh(x0_l, sigma^2)), each factor integrated to
    ``rel_tol``.  With fewer than s nonzeros the bound is exactly n*sigma^2,
    where it coincides with the lower bounds.  This is the exact MSE of the
    constrained oracle estimator at its anchor.
    """
    check_admissible(x0, model)
    sig2 = model.sigma2
    if x0.norm0 < model.s:
        value = model.n * sig2
    else:
        prod = 1.0
        for i in x0.support:
            prod *= expected_tanh(float(x0.values[i]), sig2, rel_tol)
        value = model.s * sig2 + (model.n - model.s) * sig2 * (1.0 - prod)
    return BoundValue(value, BoundKind.BB_C, x0, model.sigma)
