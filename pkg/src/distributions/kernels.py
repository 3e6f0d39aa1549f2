"""Floating-point pmf, cdf and interval probabilities for the four families.

Log-space pmfs use the saddle-point form: each log-factorial is split into
its Stirling approximation plus the small remainder ``_stirlerr``, and the
large terms that would cancel are folded into the deviance ``_bd0``, which is
computed by a series when k is close to its mean. Interval probabilities sum
exponentiated terms over a window around the mean with ``math.fsum``. Terms
outside ``mean +/- (w * sd + w)`` (w from config ``numerics.window_sigmas``)
are below 1e-300 and are dropped.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from src.distributions.base import DistributionSpec, Family, KIndexInterval
from src.distributions.exact import t_weight_exact
from src.utils.config import numerics_setting
from src.utils.errors import DomainError

LOG_2PI = math.log(2.0 * math.pi)

# Stirling series coefficients 1/12, 1/360, 1/1260, 1/1680, 1/1188
_S0, _S1, _S2, _S3, _S4 = 1.0 / 12, 1.0 / 360, 1.0 / 1260, 1.0 / 1680, 1.0 / 1188
_SERIES_FROM = 15.0
_BD0_MAX_TERMS = 40
_BD0_LOG_EPS = math.log(1e-18)


def log_pmf(spec: DistributionSpec, theta: float, k: ArrayLike) -> np.ndarray:
    """Natural log of Pr{K = k | theta}; ``-inf`` outside the support."""
    ks = np.asarray(k, dtype=float)
    if spec.family is Family.BINOMIAL:
        n = spec.n_samples
        inside = (ks >= 0) & (ks <= n)
        out = _log_binom_raw(np.clip(ks, 0, n), n, theta, 1.0 - theta)
    elif spec.family is Family.POISSON:
        inside = ks >= 0
        out = _log_poisson(np.maximum(ks, 0), spec.n_samples * theta)
    elif spec.family is Family.NEG_BINOMIAL:
        r = float(spec.r)  # type: ignore[arg-type]
        inside = ks >= 0
        kc = np.maximum(ks, 0)
        with np.errstate(divide="ignore"):
            out = math.log(r) - np.log(kc + r) + _log_binom_raw(r, kc + r, theta, 1.0 - theta)
    else:
        N, n, M = int(spec.N_population), spec.n_samples, int(theta)  # type: ignore[arg-type]
        inside = (ks >= max(0, n - (N - M))) & (ks <= min(n, M))
        kc = np.clip(ks, max(0, n - (N - M)), min(n, M))
        p, q = n / N, (N - n) / N
        out = _log_binom_raw(kc, M, p, q) + _log_binom_raw(n - kc, N - M, p, q) - _log_binom_raw(n, N, p, q)
    return np.where(inside, out, -np.inf)


def pmf(spec: DistributionSpec, theta: float, k: int) -> float:
    """
    Pr{K = k | theta}.

    Example:
        >>> round(pmf(DistributionSpec.binomial(2), 0.5, 1), 12)
        0.5
    """
    spec.check_param(theta)
    return float(np.exp(log_pmf(spec, theta, k)))


def cdf(spec: DistributionSpec, theta: float, k: int) -> float:
    """Pr{K <= k | theta}."""
    spec.check_param(theta)
    if k < 0:
        return 0.0
    if spec.support_max is not None and k >= spec.support_max:
        return 1.0
    return _sum_range(spec, theta, 0, k)


def interval_prob(spec: DistributionSpec, theta: float, rng: KIndexInterval) -> float:
    """
    Pr{k_lo <= K <= k_hi | theta} for a contiguous k-range.

    An unbounded upper end is evaluated as the complement of the cdf.

    Raises:
        DomainError: theta out of range, or an unbounded range on a bounded-support family.
    """
    spec.check_param(theta)
    if rng.empty:
        return 0.0
    lo = 0 if rng.lo is None else max(rng.lo, 0)
    if rng.hi is None:
        if spec.support_max is not None:
            raise DomainError(f"unbounded k-range {rng} on bounded-support {spec.describe()}")
        if lo == 0:
            return 1.0
        return min(1.0, max(0.0, 1.0 - _sum_range(spec, theta, 0, lo - 1)))
    hi = rng.hi if spec.support_max is None else min(rng.hi, spec.support_max)
    if lo > hi:
        return 0.0
    if lo == 0 and hi == spec.support_max:
        return 1.0
    return _sum_range(spec, theta, lo, hi)


def t_weight(k: int, M: int, N: int, n: int) -> float:
    """
    T(k, M, N, n) = C(M, k) C(N-M-1, n-k-1) / C(N, n), zero for out-of-range coefficients.

    Example:
        >>> t_weight(0, 0, 10, 3)
        0.3
    """
    return float(t_weight_exact(k, M, N, n))


def mean_and_sd(spec: DistributionSpec, theta: float) -> tuple[float, float]:
    if spec.family is Family.BINOMIAL:
        n = spec.n_samples
        return n * theta, math.sqrt(n * theta * (1.0 - theta))
    if spec.family is Family.POISSON:
        mean = spec.n_samples * theta
        return mean, math.sqrt(mean)
    if spec.family is Family.NEG_BINOMIAL:
        r = float(spec.r)  # type: ignore[arg-type]
        return r * (1.0 - theta) / theta, math.sqrt(r * (1.0 - theta)) / theta
    N, n = int(spec.N_population), spec.n_samples  # type: ignore[arg-type]
    mean = n * theta / N
    var = mean * (N - theta) / N * (N - n) / max(N - 1, 1)
    return mean, math.sqrt(max(var, 0.0))


def summation_window(spec: DistributionSpec, theta: float) -> tuple[int, int]:
    """Range of k holding all probability mass above 1e-300 at theta."""
    if spec.family is Family.HYPERGEOMETRIC:
        N, n, M = int(spec.N_population), spec.n_samples, int(theta)  # type: ignore[arg-type]
        return max(0, n - (N - M)), min(n, M)
    w = float(numerics_setting("window_sigmas"))
    mean, sd = mean_and_sd(spec, theta)
    lo = max(0, math.floor(mean - w * sd - w))
    hi = math.ceil(mean + w * sd + w)
    if spec.support_max is not None:
        hi = min(hi, spec.support_max)
    return lo, hi


def _sum_range(spec: DistributionSpec, theta: float, lo: int, hi: int) -> float:
    wlo, whi = summation_window(spec, theta)
    lo, hi = max(lo, wlo), min(hi, whi)
    if lo > hi:
        return 0.0
    if whi - wlo + 1 > int(numerics_setting("max_direct_terms")):
        return _special_interval(spec, theta, lo, hi)
    terms = _window_terms(spec, theta)[lo - wlo : hi - wlo + 1]
    # fsum is exactly rounded, so the order of the terms does not matter
    return min(1.0, math.fsum(terms))


@lru_cache(maxsize=64)
def _window_terms(spec: DistributionSpec, theta: float) -> list[float]:
    """pmf over the whole summation window at theta."""
    wlo, whi = summation_window(spec, theta)
    return np.exp(log_pmf(spec, theta, np.arange(wlo, whi + 1))).tolist()


def _special_interval(spec: DistributionSpec, theta: float, lo: int, hi: int) -> float:
    """Incomplete beta/gamma route for windows too wide to sum term by term."""
    upper = _special_cdf(spec, theta, hi)
    lower = _special_cdf(spec, theta, lo - 1) if lo > 0 else 0.0
    return min(1.0, max(0.0, upper - lower))


def _special_cdf(spec: DistributionSpec, theta: float, k: int) -> float:
    if spec.family is Family.BINOMIAL:
        return float(special.bdtr(k, spec.n_samples, theta))
    if spec.family is Family.POISSON:
        return float(special.pdtr(k, spec.n_samples * theta))
    if spec.family is Family.NEG_BINOMIAL:
        return float(special.betainc(float(spec.r), k + 1.0, theta))  # type: ignore[arg-type]
    raise DomainError("hypergeometric windows are always summed directly")


def _stirlerr(x: ArrayLike) -> np.ndarray:
    """log(x!) - (x + 1/2) log(x) + x - log(2 pi) / 2, the remainder after Stirling's formula."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(xs.shape)
    big = xs > _SERIES_FROM
    with np.errstate(divide="ignore", invalid="ignore"):
        if big.any():
            xb = xs[big]
            inv2 = 1.0 / (xb * xb)
            out[big] = (_S0 - (_S1 - (_S2 - (_S3 - _S4 * inv2) * inv2) * inv2) * inv2) / xb
        small = ~big
        if small.any():
            # the remainder is O(1) here, so gammaln is accurate enough
            xm = xs[small]
            out[small] = special.gammaln(xm + 1.0) - (xm + 0.5) * np.log(xm) + xm - 0.5 * LOG_2PI
    return out.reshape(np.shape(x))


def _bd0(x: ArrayLike, m: ArrayLike) -> np.ndarray:
    """x log(x / m) + m - x without cancellation when x is near m; bd0(0, m) = m."""
    shape = np.broadcast_shapes(np.shape(x), np.shape(m))
    xs, ms = np.broadcast_arrays(np.atleast_1d(np.asarray(x, dtype=float)), np.atleast_1d(np.asarray(m, dtype=float)))
    out = np.empty(xs.shape)
    near = np.abs(xs - ms) < 0.1 * (xs + ms)
    far = ~near
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if far.any():
            xf, mf = xs[far], ms[far]
            out[far] = np.where(xf == 0, 0.0, special.xlogy(xf, xf / mf)) + mf - xf
        if near.any():
            xn, mn = xs[near], ms[near]
            d = xn - mn
            v = d / (xn + mn)
            s = d * v
            ej = 2.0 * xn * v
            v2 = v * v
            v2max = float(v2.max())
            terms = 0 if v2max == 0 else min(_BD0_MAX_TERMS, math.ceil(_BD0_LOG_EPS / math.log(v2max)))
            for j in range(1, terms + 1):
                ej = ej * v2
                s = s + ej / (2 * j + 1)
            out[near] = s
    return out.reshape(shape)


def _log_binom_raw(x: ArrayLike, n: ArrayLike, p: float, q: float) -> np.ndarray:
    """
    log(C(n, x) p^x q^(n - x)) for real 0 <= x <= n, with q = 1 - p passed separately.

    Non-integer x and n read C(n, x) through the gamma function.
    """
    shape = np.broadcast_shapes(np.shape(x), np.shape(n))
    xs, ns = np.broadcast_arrays(np.atleast_1d(np.asarray(x, dtype=float)), np.atleast_1d(np.asarray(n, dtype=float)))
    out = np.empty(xs.shape)
    zero = xs == 0
    top = (xs == ns) & ~zero
    inner = ~(zero | top)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if zero.any():
            nz = ns[zero]
            out[zero] = -_bd0(nz, nz * q) - nz * p if p < 0.1 else special.xlogy(nz, q)
        if top.any():
            nt = ns[top]
            out[top] = -_bd0(nt, nt * p) - nt * q if q < 0.1 else special.xlogy(nt, p)
        if inner.any():
            xi, ni = xs[inner], ns[inner]
            lc = _stirlerr(ni) - _stirlerr(xi) - _stirlerr(ni - xi) - _bd0(xi, ni * p) - _bd0(ni - xi, ni * q)
            lf = LOG_2PI + np.log(xi) + np.log1p(-xi / ni)
            out[inner] = lc - 0.5 * lf
    return out.reshape(shape)


def _log_poisson(k: np.ndarray, mean: float) -> np.ndarray:
    ks = np.atleast_1d(k)
    out = np.full(ks.shape, -mean, dtype=float)
    positive = ks > 0
    if positive.any():
        kp = ks[positive]
        with np.errstate(divide="ignore"):
            out[positive] = -_stirlerr(kp) - _bd0(kp, mean) - 0.5 * (LOG_2PI + np.log(kp))
    return out.reshape(np.shape(k))
