import numpy as np
import pytest

from flatscale.scaling_fit import DegenerateFitError, FitResult, fit_scaling_exponent


def synth(eps_grid, fn, rel_noise=0.0, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for eps in eps_grid:
        v = fn(eps)
        noise = rng.normal(0, rel_noise * v) if rel_noise else 0.0
        rows.append((eps, v + noise, max(rel_noise, 1e-3) * v))
    return rows


class TestExactPowerLaws:
    def test_k1_square(self):
        rows = synth([(e,) for e in (0.025, 0.05, 0.1, 0.2)], lambda e: 7.0 * e[0] ** 2)
        fit = fit_scaling_exponent(rows)
        assert fit.slopes[0] == pytest.approx(2.0, abs=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-9)

    def test_k2_product(self):
        grid = [(a, b) for a in (0.05, 0.1, 0.2, 0.4) for b in (0.05, 0.1, 0.2, 0.4)]
        rows = synth(grid, lambda e: e[0] ** 2 * e[1] ** 2)
        fit = fit_scaling_exponent(rows)
        assert fit.slopes[0] == pytest.approx(2.0, abs=1e-9)
        assert fit.slopes[1] == pytest.approx(2.0, abs=1e-9)

    def test_joint_slope_diagonal(self):
        rows = synth([(e, e) for e in (0.05, 0.1, 0.2, 0.4)],
                     lambda e: e[0] ** 2 * e[1] ** 2)
        fit = fit_scaling_exponent(rows)
        assert fit.joint_slope == pytest.approx(2.0, abs=1e-9)


class TestNoise:
    def test_noisy_slope_within_ci(self):
        rows = synth([(e,) for e in (0.025, 0.05, 0.1, 0.2, 0.4)],
                     lambda e: 3.0 * e[0] ** 2, rel_noise=0.05, seed=3)
        fit = fit_scaling_exponent(rows)
        lo, hi = fit.ci95[0]
        assert lo <= 2.0 <= hi or abs(fit.slopes[0] - 2.0) < 0.2


class TestValidation:
    def test_zero_estimate_rejected(self):
        rows = [((0.1,), 0.0, 0.0), ((0.2,), 1.0, 0.01),
                ((0.4,), 4.0, 0.01), ((0.8,), 16.0, 0.01)]
        with pytest.raises(DegenerateFitError):
            fit_scaling_exponent(rows)

    def test_too_few_points(self):
        rows = synth([(e,) for e in (0.1, 0.2)], lambda e: e[0] ** 2)
        with pytest.raises(DegenerateFitError):
            fit_scaling_exponent(rows)

    def test_large_stderr_rejected(self):
        rows = [((e,), e ** 2, 0.5 * e ** 2) for e in (0.05, 0.1, 0.2, 0.4)]
        with pytest.raises(DegenerateFitError):
            fit_scaling_exponent(rows)
        fit = fit_scaling_exponent(rows, strict=False)
        assert fit.slopes[0] == pytest.approx(2.0, abs=1e-6)
