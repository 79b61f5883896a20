"""Seeded sampling from the noise model and honest MSE / bias estimation.

Sampling contract: a run with seed ``seed`` consumes the standard-normal
output stream of ``numpy.random.default_rng(seed)`` in trial order, so trial
``t`` of an n-dimensional experiment owns draws ``t*n .. (t+1)*n - 1``.
Growing the trial count leaves earlier trials' draws unchanged, and repeated
runs with identical inputs are bit-identical on one platform.  Trials are
reduced serially; cross-implementation comparisons must use the reported
standard errors, never bit equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ModelConfig, ParamVector, check_admissible
from .errors import DimensionMismatch

MIN_TRIALS = 100


@dataclass(frozen=True)
class McConfig:
    """Trial count and stream seed for one Monte Carlo estimate."""

    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < MIN_TRIALS:
            raise ValueError(
                f"at least {MIN_TRIALS} trials are needed for a meaningful standard error, "
                f"got {self.trials}"
            )
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class McEstimate:
    """Sample mean with its standard error (sample std / sqrt(trials))."""

    mean: float
    std_error: float
    trials: int
    seed: int


def sample(x0: ParamVector, model: ModelConfig, rng: np.random.Generator) -> np.ndarray:
    """Draw one observation y = x0 + sigma * z with z standard normal."""
    check_admissible(x0, model)
    return x0.values + model.sigma * rng.standard_normal(model.n)


def _observation_block(x0: ParamVector, model: ModelConfig,
                       trials: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return x0.values + model.sigma * rng.standard_normal((trials, model.n))


def _apply(estimator, y: np.ndarray) -> np.ndarray:
    out = np.asarray(estimator(y), dtype=np.float64)
    if out.shape != y.shape:
        raise DimensionMismatch(
            f"estimator returned shape {out.shape} for a {y.shape} observation block"
        )
    return out


def estimate_mse(estimator, x0: ParamVector, model: ModelConfig, mc: McConfig) -> McEstimate:
    """Monte Carlo mean of ||x_hat(y) - x0||^2 over seeded trials.

    ``estimator`` must accept a (trials, n) block and return the estimates
    with the same shape.  Deterministic given (seed, trials, estimator, x0,
    model).
    """
    check_admissible(x0, model)
    y = _observation_block(x0, model, mc.trials, mc.seed)
    err = _apply(estimator, y) - x0.values
    losses = np.einsum("ij,ij->i", err, err)
    mean = float(losses.mean())
    std_error = float(losses.std(ddof=1) / math.sqrt(mc.trials))
    return McEstimate(mean, std_error, mc.trials, mc.seed)


def estimate_bias(estimator, x_true: ParamVector, model: ModelConfig,
                  mc: McConfig) -> list[McEstimate]:
    """Componentwise Monte Carlo mean of x_hat(y) - x_true, with standard errors.

    The estimator may carry side information anchored anywhere; the
    observations are drawn at ``x_true``, so this measures bias over the
    whole parameter class, not just at the estimator's own anchor.
    """
    check_admissible(x_true, model)
    y = _observation_block(x_true, model, mc.trials, mc.seed)
    deviations = _apply(estimator, y) - x_true.values
    means = deviations.mean(axis=0)
    std_errors = deviations.std(axis=0, ddof=1) / math.sqrt(mc.trials)
    return [
        McEstimate(float(m), float(se), mc.trials, mc.seed)
        for m, se in zip(means, std_errors)
    ]


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Derive ``count`` independent stream seeds from one base seed.

    Pure function of (seed, count) via numpy's SeedSequence expansion; used
    by sweep runners to give every (point, estimator) cell its own stream.
    """
    state = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    return [int(s) for s in state]
