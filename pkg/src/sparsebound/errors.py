"""Exception types shared across the package."""


class SparseModelError(Exception):
    """Base class for all errors raised by this package."""


class SparsityViolation(SparseModelError):
    """A vector has more nonzero entries than the sparsity level allows."""


class DegenerateInput(SparseModelError):
    """An input is degenerate for the requested quantity (e.g. the zero vector)."""


class DimensionMismatch(SparseModelError):
    """Array shapes do not match the model or each other."""


class NumericalOverflow(SparseModelError):
    """A computation would overflow double precision; use a closed-form limit instead."""


class QuadratureNonConvergence(SparseModelError):
    """Adaptive quadrature did not reach the requested tolerance within its panel budget."""


class AnchorMismatch(SparseModelError):
    """A test-point set is anchored at a different parameter than the one supplied."""


class OracleMismatch(SparseModelError):
    """The oracle estimator requires a parameter with exactly S nonzero entries."""
