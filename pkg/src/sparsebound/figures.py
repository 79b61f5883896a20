"""Experiment runners: bound/estimator sweeps over scaled parameter families.

A family is a fixed base pattern scaled by positive factors c; the factors
are chosen so the resulting SNR grid is linear in dB.  Sweep output is a
Table sorted by ascending SNR with every value normalized by sigma^2, so
results are invariant to the noise level.  Bound columns are closed-form and
seed-independent; Monte Carlo columns carry standard errors and each
(point, estimator) cell draws from its own derived stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import constrained_barankin, crb, hcrb_limit
from .core import ModelConfig, ParamVector, snr_db
from .estimators import ESTIMATOR_NAMES, make_estimator
from .montecarlo import McConfig, estimate_mse, spawn_seeds
from .tableio import Table

BOUND_NAMES = ("crb", "hcrb", "bb_c")

_BOUND_FUNCS = {
    "crb": crb,
    "hcrb": hcrb_limit,
    "bb_c": constrained_barankin,
}

FIG1_PATTERN = (1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
FIG2_PATTERNS = {
    "r": FIG1_PATTERN,
    "r2": (0.1, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    "r3": (10.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
}

DEFAULT_TRIALS = 100_000
DEFAULT_POINTS = 50


@dataclass(frozen=True)
class Family:
    """A base pattern with the positive scale factors to sweep over."""

    name: str
    pattern: np.ndarray
    scales: np.ndarray

    def __post_init__(self):
        pattern = np.asarray(self.pattern, dtype=np.float64)
        scales = np.asarray(self.scales, dtype=np.float64)
        if pattern.ndim != 1 or scales.ndim != 1:
            raise ValueError("pattern and scales must be 1-d")
        if np.count_nonzero(pattern) == 0:
            raise ValueError("the base pattern must have at least one nonzero entry")
        if not np.all(scales > 0):
            raise ValueError("all scale factors must be positive")
        pattern.setflags(write=False)
        scales.setflags(write=False)
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "scales", scales)

    def parameter(self, index: int) -> ParamVector:
        return ParamVector(self.scales[index] * self.pattern)


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything one sweep needs: model, family, bound/estimator lists, MC config."""

    name: str
    model: ModelConfig
    family: Family
    bounds: tuple[str, ...]
    estimators: tuple[str, ...]
    mc: McConfig

    def __post_init__(self):
        if self.family.pattern.size != self.model.n:
            raise ValueError(
                f"pattern has length {self.family.pattern.size}, model expects {self.model.n}"
            )
        if np.count_nonzero(self.family.pattern) > self.model.s:
            raise ValueError("the base pattern has more nonzero entries than the model allows")
        for b in self.bounds:
            if b not in BOUND_NAMES:
                raise ValueError(f"unknown bound {b!r}, expected ones of {BOUND_NAMES}")
        for e in self.estimators:
            if e not in ESTIMATOR_NAMES:
                raise ValueError(f"unknown estimator {e!r}, expected ones of {ESTIMATOR_NAMES}")


def scales_for_snr(pattern, model: ModelConfig, snr_min_db: float, snr_max_db: float,
                   points: int) -> np.ndarray:
    """Scale factors hitting a linear-in-dB SNR grid from snr_min_db to snr_max_db.

    Solving ||c * pattern||^2 / (n sigma^2) = 10^(snr/10) for c gives a
    log-spaced grid of factors.
    """
    if points < 2:
        raise ValueError(f"need at least two sweep points, got {points}")
    if snr_max_db <= snr_min_db:
        raise ValueError("snr_max_db must exceed snr_min_db")
    pattern = np.asarray(pattern, dtype=np.float64)
    energy = float(np.dot(pattern, pattern))
    if energy == 0.0:
        raise ValueError("the base pattern must be nonzero")
    grid = np.linspace(snr_min_db, snr_max_db, points)
    return model.sigma * np.sqrt(model.n * 10.0 ** (grid / 10.0) / energy)


def fig1_spec(n: int = 10, s: int = 4, sigma: float = 1.0,
              trials: int = DEFAULT_TRIALS, seed: int = 0,
              points: int = DEFAULT_POINTS,
              snr_min_db: float = -20.0, snr_max_db: float = 20.0,
              pattern=None,
              bounds: tuple[str, ...] = BOUND_NAMES,
              estimators: tuple[str, ...] = ("ml", "ht")) -> ExperimentSpec:
    """The default bound-versus-estimator sweep: equal-magnitude pattern, 50 points."""
    model = ModelConfig(n, s, sigma)
    if pattern is None:
        if n < 5 or s != 4:
            raise ValueError("the default pattern needs n >= 5 and s == 4; pass one explicitly")
        pattern = np.array(FIG1_PATTERN[:n] if n <= 10 else FIG1_PATTERN + (0.0,) * (n - 10))
    family = Family("r", np.asarray(pattern, dtype=np.float64),
                    scales_for_snr(pattern, model, snr_min_db, snr_max_db, points))
    return ExperimentSpec("fig1", model, family, tuple(bounds), tuple(estimators),
                          McConfig(trials, seed))


def run_sweep(spec: ExperimentSpec) -> Table:
    """Evaluate bounds and Monte Carlo MSEs along the family, normalized by sigma^2.

    Columns: snr_db, one per requested bound, then mse_<name>, se_<name> per
    estimator.  Rows ascend in SNR.  Sweep points are independent; they are
    evaluated serially so a run is deterministic for a given seed.
    """
    model = spec.model
    sig2 = model.sigma2
    n_points = spec.family.scales.size
    columns = ["snr_db"] + list(spec.bounds)
    for name in spec.estimators:
        columns += [f"mse_{name}", f"se_{name}"]
    seeds = spawn_seeds(spec.mc.seed, n_points * max(len(spec.estimators), 1))

    data = np.empty((n_points, len(columns)))
    for i in range(n_points):
        x0 = spec.family.parameter(i)
        row = [snr_db(x0, model)]
        for bound_name in spec.bounds:
            row.append(_BOUND_FUNCS[bound_name](x0, model).value / sig2)
        for j, est_name in enumerate(spec.estimators):
            estimator = make_estimator(est_name, model, x0)
            mc = McConfig(spec.mc.trials, seeds[i * len(spec.estimators) + j])
            result = estimate_mse(estimator, x0, model, mc)
            row += [result.mean / sig2, result.std_error / sig2]
        data[i] = row

    order = np.argsort(data[:, 0], kind="stable")
    return Table(tuple(columns), data[order])


def run_fig1(spec: ExperimentSpec | None = None) -> Table:
    """The default sweep (CRB, HCRB, BB_c against ML and HT)."""
    return run_sweep(spec if spec is not None else fig1_spec())


def run_fig2(model: ModelConfig | None = None,
             snr_min_db: float = -20.0, snr_max_db: float = 30.0,
             points: int = DEFAULT_POINTS) -> Table:
    """Tightness ratio BB_c / HCRB for the three canonical families.

    Pure closed-form computation, no Monte Carlo.  Columns: snr_db plus one
    ratio series per family (equal magnitudes, one small entry, one large
    entry), each family's scales chosen to share the same SNR grid.
    """
    if model is None:
        model = ModelConfig(10, 4, 1.0)
    columns = ["snr_db"]
    ratio_columns = []
    for name, pattern in FIG2_PATTERNS.items():
        pattern = np.asarray(pattern, dtype=np.float64)
        if pattern.size != model.n or np.count_nonzero(pattern) > model.s:
            raise ValueError(
                f"family {name!r} does not fit the model (n={model.n}, s={model.s})"
            )
        scales = scales_for_snr(pattern, model, snr_min_db, snr_max_db, points)
        ratio_columns.append((name, pattern, scales))
        columns.append(f"ratio_{name}")

    data = np.empty((points, len(columns)))
    data[:, 0] = np.linspace(snr_min_db, snr_max_db, points)
    for col, (name, pattern, scales) in enumerate(ratio_columns, start=1):
        for i in range(points):
            x0 = ParamVector(scales[i] * pattern)
            upper = constrained_barankin(x0, model).value
            lower = hcrb_limit(x0, model).value
            data[i, col] = upper / lower
    return Table(tuple(columns), data)


def tightness_ratio(x0: ParamVector, model: ModelConfig) -> float:
    """BB_c / HCRB at a single parameter point."""
    return constrained_barankin(x0, model).value / hcrb_limit(x0, model).value
