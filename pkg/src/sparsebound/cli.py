"""Command-line front end for bound evaluation and experiment sweeps.

Subcommands: bounds, mse, fig1, fig2, sweep.  Exit codes: 0 success,
2 usage or validation error, 3 numerical error (overflow, quadrature),
4 I/O error.  Flags may also be supplied through a JSON config file via
--config; explicit flags override config values, which override defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .bounds import (
    build_test_points_hcrb,
    constrained_barankin,
    crb,
    hcrb_finite,
    hcrb_limit,
)
from .core import ModelConfig, ParamVector, snr_db
from .errors import (
    AnchorMismatch,
    DegenerateInput,
    DimensionMismatch,
    NumericalOverflow,
    OracleMismatch,
    QuadratureNonConvergence,
    SparsityViolation,
)
from .estimators import ESTIMATOR_NAMES, make_estimator
from .figures import (
    BOUND_NAMES,
    ExperimentSpec,
    Family,
    fig1_spec,
    run_fig2,
    run_sweep,
    scales_for_snr,
)
from .montecarlo import McConfig, estimate_mse
from .svgchart import emit_svg
from .tableio import emit_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

DEFAULTS = {
    "n": 10,
    "s": 4,
    "sigma": 1.0,
    "seed": 0,
    "trials": 100_000,
    "points": 50,
    "format": "csv",
    "yscale": "linear",
    "estimators": "ml,ht",
    "bounds": "crb,hcrb,bb_c",
}

_CONFIG_KEYS = set(DEFAULTS) | {"snr_min", "snr_max", "pattern", "out", "x0", "t", "estimator"}


def _supports_color(stream) -> bool:
    return stream.isatty() and not os.environ.get("NO_COLOR")


def _error(message: str) -> None:
    if _supports_color(sys.stderr):
        message = f"\x1b[31m{message}\x1b[0m"
    print(f"sparsebound: error: {message}", file=sys.stderr)


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in text.split(",")], dtype=np.float64)
    except ValueError:
        raise ValueError(f"could not parse {text!r} as a comma-separated vector") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="ambient dimension (default 10)")
    common.add_argument("--s", type=int, help="sparsity level (default 4)")
    common.add_argument("--sigma", type=float, help="noise standard deviation (default 1.0)")
    common.add_argument("--seed", type=int, help="Monte Carlo base seed (default 0)")
    common.add_argument("--trials", type=int, help="Monte Carlo trials per point (default 100000)")
    common.add_argument("--out", help="output path base (extension added per format)")
    common.add_argument("--config", help="JSON file supplying any of the flags")
    common.add_argument("--format", choices=("csv", "svg", "both"),
                        help="table output format (default csv)")

    parser = argparse.ArgumentParser(
        prog="sparsebound",
        description="MSE bounds and estimator benchmarks for sparse denoising",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", parents=[common],
                              help="print CRB, HCRB and BB_c at one parameter")
    p_bounds.add_argument("--x0", help="comma-separated parameter vector")
    p_bounds.add_argument("--t", type=float,
                          help="also print the finite-step bound at this step size")

    p_mse = sub.add_parser("mse", parents=[common],
                           help="Monte Carlo MSE of one estimator at one parameter")
    p_mse.add_argument("--x0", help="comma-separated parameter vector")
    p_mse.add_argument("--estimator", choices=ESTIMATOR_NAMES)

    sweep_like = argparse.ArgumentParser(add_help=False)
    sweep_like.add_argument("--points", type=int, help="sweep points (default 50)")
    sweep_like.add_argument("--snr-min", dest="snr_min", type=float, help="SNR grid start (dB)")
    sweep_like.add_argument("--snr-max", dest="snr_max", type=float, help="SNR grid end (dB)")
    sweep_like.add_argument("--yscale", choices=("linear", "log"), help="SVG y-axis scale")

    sub.add_parser("fig1", parents=[common, sweep_like],
                   help="bounds vs ML/HT MSE sweep on the equal-magnitude family")
    sub.add_parser("fig2", parents=[common, sweep_like],
                   help="BB_c/HCRB tightness ratios for three families (no Monte Carlo)")

    p_sweep = sub.add_parser("sweep", parents=[common, sweep_like],
                             help="custom family sweep")
    p_sweep.add_argument("--pattern", help="comma-separated base pattern (default fig1 pattern)")
    p_sweep.add_argument("--estimators", help="comma-separated estimator names (default ml,ht)")
    p_sweep.add_argument("--bounds", help="comma-separated bound names (default crb,hcrb,bb_c)")

    return parser


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        config = json.load(handle)
    if not isinstance(config, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    unknown = set(config) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    return config


def _resolve(args: argparse.Namespace, key: str, fallback=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    config = getattr(args, "_config", None)
    if config and key in config:
        return config[key]
    if key in DEFAULTS:
        return DEFAULTS[key]
    return fallback


def _model(args) -> ModelConfig:
    return ModelConfig(int(_resolve(args, "n")), int(_resolve(args, "s")),
                       float(_resolve(args, "sigma")))


def _x0(args, model: ModelConfig) -> ParamVector:
    raw = _resolve(args, "x0")
    if raw is None:
        raise ValueError("--x0 is required (comma-separated vector)")
    values = raw if isinstance(raw, (list, tuple)) else _parse_vector(str(raw))
    x0 = ParamVector(values)
    if x0.n != model.n:
        raise DimensionMismatch(f"--x0 has length {x0.n}, model expects n={model.n}")
    return x0


def _write_outputs(table, args, default_base: str, yscale: str = "linear",
                   title: str = "") -> None:
    fmt = _resolve(args, "format")
    out = _resolve(args, "out") or default_base
    base, ext = os.path.splitext(out)
    if ext.lower() in (".csv", ".svg"):
        out = base
    if fmt in ("csv", "both"):
        path = out + ".csv"
        emit_csv(table, path)
        print(f"wrote {path}")
    if fmt in ("svg", "both"):
        path = out + ".svg"
        emit_svg(table, path, yscale=yscale, title=title, y_label="MSE / sigma^2")
        print(f"wrote {path}")


def _cmd_bounds(args) -> int:
    model = _model(args)
    x0 = _x0(args, model)
    print(f"CRB {crb(x0, model).value:.12g}")
    print(f"HCRB {hcrb_limit(x0, model).value:.12g}")
    print(f"BB_c {constrained_barankin(x0, model).value:.12g}")
    t = getattr(args, "t", None)
    if t is not None:
        points = build_test_points_hcrb(x0, t, model)
        finite = hcrb_finite(x0, points, model.sigma)
        print(f"HCRB_t={t:g} {finite.value:.12g}")
    return EXIT_OK


def _cmd_mse(args) -> int:
    model = _model(args)
    x0 = _x0(args, model)
    name = _resolve(args, "estimator")
    if name is None:
        raise ValueError("--estimator is required")
    if name not in ESTIMATOR_NAMES:
        raise ValueError(f"unknown estimator {name!r}, expected one of {ESTIMATOR_NAMES}")
    mc = McConfig(int(_resolve(args, "trials")), int(_resolve(args, "seed")))
    estimator = make_estimator(name, model, x0)
    result = estimate_mse(estimator, x0, model, mc)
    print(f"estimator {name}")
    print(f"snr_db {snr_db(x0, model):.12g}")
    print(f"trials {result.trials}")
    print(f"mse {result.mean:.12g}")
    print(f"se {result.std_error:.12g}")
    print(f"mse_norm {result.mean / model.sigma2:.12g}")
    return EXIT_OK


def _cmd_fig1(args) -> int:
    spec = fig1_spec(
        n=int(_resolve(args, "n")),
        s=int(_resolve(args, "s")),
        sigma=float(_resolve(args, "sigma")),
        trials=int(_resolve(args, "trials")),
        seed=int(_resolve(args, "seed")),
        points=int(_resolve(args, "points")),
        snr_min_db=float(_resolve(args, "snr_min", -20.0)),
        snr_max_db=float(_resolve(args, "snr_max", 20.0)),
    )
    table = run_sweep(spec)
    _write_outputs(table, args, "fig1", yscale=_resolve(args, "yscale"),
                   title="bounds vs estimator MSE")
    return EXIT_OK


def _cmd_fig2(args) -> int:
    model = _model(args)
    table = run_fig2(
        model,
        snr_min_db=float(_resolve(args, "snr_min", -20.0)),
        snr_max_db=float(_resolve(args, "snr_max", 30.0)),
        points=int(_resolve(args, "points")),
    )
    _write_outputs(table, args, "fig2", yscale=_resolve(args, "yscale"),
                   title="BB_c / HCRB tightness")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    model = _model(args)
    raw_pattern = _resolve(args, "pattern")
    if raw_pattern is None:
        pattern = np.zeros(model.n)
        pattern[: min(4, model.s)] = 1.0
    elif isinstance(raw_pattern, (list, tuple)):
        pattern = np.asarray(raw_pattern, dtype=np.float64)
    else:
        pattern = _parse_vector(str(raw_pattern))
    raw_estimators = _resolve(args, "estimators")
    estimators = tuple(e for e in str(raw_estimators).split(",") if e)
    raw_bounds = _resolve(args, "bounds")
    bound_names = tuple(b for b in str(raw_bounds).split(",") if b)
    for b in bound_names:
        if b not in BOUND_NAMES:
            raise ValueError(f"unknown bound {b!r}, expected ones of {BOUND_NAMES}")
    scales = scales_for_snr(pattern, model,
                            float(_resolve(args, "snr_min", -20.0)),
                            float(_resolve(args, "snr_max", 20.0)),
                            int(_resolve(args, "points")))
    spec = ExperimentSpec(
        "sweep", model, Family("sweep", pattern, scales), bound_names, estimators,
        McConfig(int(_resolve(args, "trials")), int(_resolve(args, "seed"))),
    )
    table = run_sweep(spec)
    _write_outputs(table, args, "sweep", yscale=_resolve(args, "yscale"), title="sweep")
    return EXIT_OK


_COMMANDS = {
    "bounds": _cmd_bounds,
    "mse": _cmd_mse,
    "fig1": _cmd_fig1,
    "fig2": _cmd_fig2,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.config:
            args._config = _load_config(args.config)
        else:
            args._config = None
        return _COMMANDS[args.command](args)
    except (NumericalOverflow, QuadratureNonConvergence) as exc:
        _error(str(exc))
        return EXIT_NUMERICAL
    except (SparsityViolation, DimensionMismatch, DegenerateInput, OracleMismatch,
            AnchorMismatch, ValueError) as exc:
        _error(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _error(str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
