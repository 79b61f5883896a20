"""Adaptive quadrature engine and the tanh expectation integral."""

import math

import numpy as np
import pytest

from sparsebound import QuadratureNonConvergence, adaptive_gauss, expected_tanh


class TestAdaptiveGauss:
    def test_polynomial_exact(self):
        assert adaptive_gauss(lambda x: x ** 2, 0.0, 1.0, 1e-12) == pytest.approx(
            1.0 / 3.0, rel=1e-13)

    def test_sine(self):
        assert adaptive_gauss(np.sin, 0.0, math.pi, 1e-12) == pytest.approx(2.0, rel=1e-12)

    def test_half_gaussian_vs_erf(self):
        # independent oracle: int_0^b exp(-x^2) dx = sqrt(pi)/2 * erf(b)
        for b in (0.5, 2.0, 6.0):
            want = 0.5 * math.sqrt(math.pi) * math.erf(b)
            got = adaptive_gauss(lambda x: np.exp(-x * x), 0.0, b, 1e-12)
            assert got == pytest.approx(want, rel=1e-12)

    def test_empty_interval(self):
        assert adaptive_gauss(np.sin, 1.0, 1.0, 1e-10) == 0.0

    def test_reversed_interval_rejected(self):
        with pytest.raises(ValueError):
            adaptive_gauss(np.sin, 1.0, 0.0, 1e-10)

    def test_budget_exhaustion_raises(self):
        # a kink keeps the two-level error estimate alive; a tiny budget
        # cannot absorb it at this tolerance
        f = lambda x: np.abs(x - math.sqrt(0.5))
        with pytest.raises(QuadratureNonConvergence):
            adaptive_gauss(f, 0.0, 1.0, 1e-15, max_panels=8)

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            adaptive_gauss(np.sin, 0.0, 1.0, 0.0)


def mc_tanh_expectation(x, sigma2, samples, seed):
    """Monte Carlo oracle: mean of tanh(x*y/sigma2) over y ~ N(x, sigma2)."""
    rng = np.random.default_rng(seed)
    y = rng.normal(x, math.sqrt(sigma2), samples)
    vals = np.tanh(x * y / sigma2)
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples))


class TestExpectedTanh:
    def test_zero_at_origin(self):
        assert expected_tanh(0.0, 1.0) == 0.0
        assert expected_tanh(0.0, 0.04) == 0.0

    @pytest.mark.parametrize("x", [0.3, 1.7, 6.0])
    def test_even_in_x(self, x):
        assert expected_tanh(-x, 1.0) == expected_tanh(x, 1.0)

    def test_saturates_at_large_argument(self):
        assert expected_tanh(20.0, 1.0) > 1.0 - 1e-6

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_matches_monte_carlo_oracle(self, x):
        mean, se = mc_tanh_expectation(x, 1.0, 200_000, seed=91)
        assert abs(expected_tanh(x, 1.0) - mean) < 4.0 * se

    def test_within_unit_interval(self):
        for x in np.linspace(0.05, 8.0, 40):
            g = expected_tanh(float(x), 1.0)
            assert 0.0 < g < 1.0

    def test_monotone_in_magnitude(self):
        grid = np.linspace(0.0, 6.0, 30)
        vals = [expected_tanh(float(x), 1.0) for x in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        # beyond the representable range the value flattens at 1.0
        tail = [expected_tanh(float(x), 1.0) for x in (8.0, 12.0, 20.0)]
        assert all(b >= a for a, b in zip(tail, tail[1:]))

    def test_scale_invariance(self):
        # g(x; sigma^2) depends on x/sigma only
        for x, sigma in ((0.7, 0.3), (2.0, 1.6), (0.05, 2.0)):
            lhs = expected_tanh(x, sigma * sigma)
            rhs = expected_tanh(x / sigma, 1.0)
            assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_rejects_bad_variance(self):
        with pytest.raises(ValueError):
            expected_tanh(1.0, 0.0)
