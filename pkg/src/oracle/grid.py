"""Dense-grid coverage minimisation.

Events are re-derived by comparing every L(k), U(k) with theta directly, and
probabilities come from ``scipy.stats``, so neither the binary searches nor the
engine's kernels are on this path.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats

from src.coverage.critical_set import breakpoints_continuous
from src.distributions.base import DistributionSpec, Family
from src.procedures.base import BoundsMode, IntervalProcedure
from src.utils.config import config_setting
from src.utils.errors import DomainError

CHUNK = 2048
TAIL_EPS = 1e-17


def grid_min(
    spec: DistributionSpec,
    proc: IntervalProcedure,
    a: float,
    b: float,
    mode: BoundsMode,
    n_grid: int | None = None,
) -> tuple[float, float]:
    """
    (theta*, value) minimising coverage over a uniform grid augmented with critical points.

    The grid holds ``n_grid`` uniform points on [a, b], every critical point and
    each critical point shifted by +/- offset * (b - a), clipped to [a, b].
    Ties go to the smallest theta.
    """
    n_grid = int(config_setting("oracle", "grid_points")) if n_grid is None else n_grid
    thetas = grid_points(proc, a, b, n_grid, float(config_setting("oracle", "neighbour_offset")))
    values = grid_coverage(spec, proc, thetas, mode)
    i = int(np.argmin(values))
    return float(thetas[i]), float(values[i])


def grid_points(proc: IntervalProcedure, a: float, b: float, n_grid: int, offset: float) -> np.ndarray:
    if n_grid < 2:
        raise DomainError(f"grid needs at least 2 points, got {n_grid}")
    if a > b:
        raise DomainError(f"range: a must be < b, got a={a!r}, b={b!r}")
    if a == b:
        return np.array([float(a)])
    crit = np.array(breakpoints_continuous(proc, a, b).values(), dtype=float)
    eps = offset * (b - a)
    pts = np.concatenate([np.linspace(a, b, n_grid), crit, crit - eps, crit + eps])
    return np.unique(np.clip(pts, a, b))


def grid_coverage(spec: DistributionSpec, proc: IntervalProcedure, thetas: ArrayLike, mode: BoundsMode) -> np.ndarray:
    """Coverage of ``proc`` under ``mode`` at each theta, by direct per-k comparison."""
    if spec.family is Family.HYPERGEOMETRIC:
        raise DomainError("hypergeometric coverage is scanned with exhaustive_min_hypergeom")
    th_all = np.asarray(thetas, dtype=float)
    if th_all.size == 0:
        return np.empty(0)
    spec.check_param(float(th_all.min()))
    spec.check_param(float(th_all.max()))
    kmax, has_tail = _cutoff(spec, proc, th_all)
    ks = np.arange(kmax + 1)
    lows = np.asarray(proc.values("lower", kmax), dtype=float)
    ups = np.asarray(proc.values("upper", kmax), dtype=float)
    out = np.empty(th_all.size)
    for start in range(0, th_all.size, CHUNK):
        th = th_all[start : start + CHUNK]
        col = th[:, None]
        inside = mode.lower_test(col)(lows[None, :]) & mode.upper_test(col)(ups[None, :])
        probs = _frozen(spec, col).pmf(ks[None, :])
        cov = np.sum(np.where(inside, probs, 0.0), axis=1)
        if has_tail:
            beyond = np.array([proc.covers(kmax + 1, float(t), mode) for t in th])
            cov = cov + np.where(beyond, _frozen(spec, th).sf(kmax), 0.0)
        out[start : start + CHUNK] = np.clip(cov, 0.0, 1.0)
    return out


def _cutoff(spec: DistributionSpec, proc: IntervalProcedure, thetas: np.ndarray) -> tuple[int, bool]:
    """Largest k compared explicitly, and whether the mass above it is added through the tail rule."""
    if spec.support_max is not None:
        return spec.support_max, False
    if proc.known_until is not None:
        return int(proc.known_until), True
    ends = np.array([thetas.min(), thetas.max()])
    far = _frozen(spec, ends).isf(TAIL_EPS)
    return int(np.nanmax(far)) + 10, False


def _frozen(spec: DistributionSpec, theta: np.ndarray):
    if spec.family is Family.BINOMIAL:
        return stats.binom(spec.n_samples, theta)
    if spec.family is Family.POISSON:
        return stats.poisson(spec.n_samples * theta)
    return stats.nbinom(spec.r, theta)
