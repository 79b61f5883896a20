"""MSE bounds and estimators for sparse denoising in white Gaussian noise.

The package covers the full stack for studying how well a sparse parameter
vector can be estimated from noisy observations: domain types and support
utilities (:mod:`~sparsebound.core`), closed-form and finite-test-point
lower bounds plus a closed-form upper bound on the best unbiased MSE
(:mod:`~sparsebound.bounds`), the matching estimators
(:mod:`~sparsebound.estimators`), a seeded Monte Carlo harness
(:mod:`~sparsebound.montecarlo`), sweep runners
(:mod:`~sparsebound.figures`) and a CLI (:mod:`~sparsebound.cli`).

Hot Monte Carlo kernels run under numba when available; set
``SPARSEBOUND_NO_NUMBA=1`` to force the pure-numpy fallback.
"""

from .bounds import (
    BoundKind,
    BoundValue,
    TestPointSet,
    build_test_points_crb,
    build_test_points_hcrb,
    constrained_barankin,
    crb,
    gram_matrix,
    hcrb_finite,
    hcrb_limit,
    min_support_magnitude,
    pseudoinverse,
)
from .core import (
    ModelConfig,
    OrthonormalDictionary,
    ParamVector,
    check_admissible,
    reduce_orthonormal,
    s_largest_magnitude,
    snr_db,
    support,
)
from .errors import (
    AnchorMismatch,
    DegenerateInput,
    DimensionMismatch,
    NumericalOverflow,
    OracleMismatch,
    QuadratureNonConvergence,
    SparseModelError,
    SparsityViolation,
)
from .estimators import (
    constrained_oracle,
    default_threshold,
    hard_threshold,
    least_squares,
    make_estimator,
    max_likelihood,
)
from .figures import (
    ExperimentSpec,
    Family,
    fig1_spec,
    run_fig1,
    run_fig2,
    run_sweep,
    scales_for_snr,
    tightness_ratio,
)
from .montecarlo import McConfig, McEstimate, estimate_bias, estimate_mse, sample, spawn_seeds
from .quadrature import adaptive_gauss, expected_tanh
from .svgchart import emit_svg, render_svg
from .tableio import Table, emit_csv, read_csv

__version__ = "0.1.0"

__all__ = [
    "AnchorMismatch",
    "BoundKind",
    "BoundValue",
    "DegenerateInput",
    "DimensionMismatch",
    "ExperimentSpec",
    "Family",
    "McConfig",
    "McEstimate",
    "ModelConfig",
    "NumericalOverflow",
    "OracleMismatch",
    "OrthonormalDictionary",
    "ParamVector",
    "QuadratureNonConvergence",
    "SparseModelError",
    "SparsityViolation",
    "Table",
    "TestPointSet",
    "adaptive_gauss",
    "build_test_points_crb",
    "build_test_points_hcrb",
    "check_admissible",
    "constrained_barankin",
    "constrained_oracle",
    "crb",
    "default_threshold",
    "emit_csv",
    "emit_svg",
    "estimate_bias",
    "estimate_mse",
    "expected_tanh",
    "fig1_spec",
    "gram_matrix",
    "hard_threshold",
    "hcrb_finite",
    "hcrb_limit",
    "least_squares",
    "make_estimator",
    "max_likelihood",
    "min_support_magnitude",
    "pseudoinverse",
    "read_csv",
    "reduce_orthonormal",
    "render_svg",
    "run_fig1",
    "run_fig2",
    "run_sweep",
    "s_largest_magnitude",
    "sample",
    "scales_for_snr",
    "snr_db",
    "spawn_seeds",
    "support",
    "tightness_ratio",
]
