"""Weighted log-log regression of cone-measure estimates against radii."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DegenerateFitError(ValueError):
    pass


@dataclass(frozen=True)
class FitResult:
    slopes: tuple[float, ...]          # per-axis exponents
    slope_stderr: tuple[float, ...]
    ci95: tuple[tuple[float, float], ...]
    joint_slope: float                 # exponent against log(eps_1 * ... * eps_k)
    joint_stderr: float
    intercept: float
    r_squared: float

    def slope_lower_bound(self, axis: int, confidence: float = 0.95) -> float:
        from scipy import stats
        z = stats.norm.ppf(confidence)
        return self.slopes[axis] - z * self.slope_stderr[axis]


def fit_scaling_exponent(results, min_points: int = 4,
                         max_rel_stderr: float = 0.20,
                         strict: bool = True) -> FitResult:
    """Fit log(estimate) = c + sum_i slope_i log(eps_i) by weighted least
    squares, weights from the delta-method log-variances.

    ``results`` is a sequence of (eps_vector, estimate, stderr).  With
    ``strict`` the preconditions are enforced: at least ``min_points``
    distinct radii per axis and every relative standard error below
    ``max_rel_stderr``.
    """
    rows = []
    for eps, est, se in results:
        eps = tuple(float(e) for e in (eps if hasattr(eps, "__len__") else [eps]))
        rows.append((eps, float(est), float(se)))
    if not rows:
        raise DegenerateFitError("no data")
    k = len(rows[0][0])
    zeros = [eps for eps, est, _ in rows if est <= 0]
    if zeros:
        raise DegenerateFitError(
            f"zero estimates at radii {zeros}; cannot fit in log space")
    if strict:
        for axis in range(k):
            vals = {eps[axis] for eps, _, _ in rows}
            if len(vals) < min_points:
                raise DegenerateFitError(
                    f"need >= {min_points} distinct radii on axis {axis}")
        bad = [(eps, se / est) for eps, est, se in rows if se / est >= max_rel_stderr]
        if bad:
            raise DegenerateFitError(
                f"relative standard error >= {max_rel_stderr:.0%} at {bad}")

    y = np.array([math.log(est) for _, est, _ in rows])
    sigma = np.array([se / est for _, est, se in rows])
    sigma = np.maximum(sigma, 1e-12)
    w = 1.0 / sigma ** 2
    X = np.column_stack(
        [np.ones(len(rows))] +
        [[math.log(eps[a]) for eps, _, _ in rows] for a in range(k)])
    WX = X * w[:, None]
    cov = np.linalg.pinv(X.T @ WX)  # pinv: collinear designs (diagonal grids)
    beta = cov @ (WX.T @ y)
    resid = y - X @ beta
    ybar = np.sum(w * y) / np.sum(w)
    sst = np.sum(w * (y - ybar) ** 2)
    ssr = np.sum(w * resid ** 2)
    r2 = 1.0 - ssr / sst if sst > 0 else 1.0

    slopes = tuple(float(b) for b in beta[1:])
    errs = tuple(float(math.sqrt(cov[i + 1, i + 1])) for i in range(k))
    ci = tuple((s - 1.959964 * e, s + 1.959964 * e)
               for s, e in zip(slopes, errs))

    # joint fit against the product of radii
    Xj = np.column_stack(
        [np.ones(len(rows)),
         [sum(math.log(e) for e in eps) for eps, _, _ in rows]])
    WXj = Xj * w[:, None]
    gram = Xj.T @ WXj
    covj = np.linalg.pinv(gram)
    betaj = covj @ (WXj.T @ y)
    joint = float(betaj[1])
    jerr = float(math.sqrt(max(covj[1, 1], 0.0)))
    return FitResult(slopes, errs, ci, joint, jerr, float(beta[0]), float(r2))
