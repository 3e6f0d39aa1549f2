"""Exact rational arithmetic for hypergeometric quantities.

All probabilities share the denominator C(N, n), so most routines work on
integer numerators and only build a ``Fraction`` at the end.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from src.distributions.base import DistributionSpec, Family, KIndexInterval
from src.utils.errors import DomainError


def comb0(m: int, z: int) -> int:
    """Binomial coefficient with C(m, z) = 0 whenever z < 0, z > m or m < 0."""
    if m < 0 or z < 0 or z > m:
        return 0
    return comb(m, z)


def pmf_numerator(k: int, M: int, N: int, n: int) -> int:
    return comb0(M, k) * comb0(N - M, n - k)


@lru_cache(maxsize=256)
def cdf_numerators(M: int, N: int, n: int) -> tuple[int, ...]:
    """Cumulative numerators; entry j holds the numerator of Pr{K <= j - 1 | M} for j = 0..n+1."""
    out = [0]
    running = 0
    for k in range(n + 1):
        running += pmf_numerator(k, M, N, n)
        out.append(running)
    return tuple(out)


def cdf_numerator(k: int, M: int, N: int, n: int) -> int:
    """Numerator of Pr{K <= k | M} over C(N, n), for any integer k."""
    if k < 0:
        return 0
    if k >= n:
        return comb(N, n)
    return cdf_numerators(M, N, n)[k + 1]


def interval_numerator(lo: int, hi: int, M: int, N: int, n: int) -> int:
    """Numerator of Pr{lo <= K <= hi | M}; zero when lo > hi."""
    if lo > hi:
        return 0
    return cdf_numerator(hi, M, N, n) - cdf_numerator(lo - 1, M, N, n)


def t_weight_numerator(k: int, M: int, N: int, n: int) -> int:
    """Numerator of T(k, M, N, n) = C(M, k) C(N-M-1, n-k-1) / C(N, n)."""
    return comb0(M, k) * comb0(N - M - 1, n - k - 1)


def t_weight_exact(k: int, M: int, N: int, n: int) -> Fraction:
    _check_t_args(M, N, n)
    return Fraction(t_weight_numerator(k, M, N, n), comb(N, n))


def pmf_exact(spec: DistributionSpec, M: int, k: int) -> Fraction:
    N, n = _hypergeom_args(spec, M)
    return Fraction(pmf_numerator(k, M, N, n), comb(N, n))


def interval_prob_exact(spec: DistributionSpec, M: int, rng: KIndexInterval) -> Fraction:
    """Pr{K in rng | M} as an exact fraction."""
    N, n = _hypergeom_args(spec, M)
    if rng.empty:
        return Fraction(0)
    lo = 0 if rng.lo is None else rng.lo
    hi = n if rng.hi is None else rng.hi
    return Fraction(interval_numerator(lo, hi, M, N, n), comb(N, n))


def _hypergeom_args(spec: DistributionSpec, M: int) -> tuple[int, int]:
    if spec.family is not Family.HYPERGEOMETRIC:
        raise DomainError(f"exact path is hypergeometric-only, got {spec.family.value}")
    spec.check_param(M)
    return int(spec.N_population), spec.n_samples  # type: ignore[arg-type]


def _check_t_args(M: int, N: int, n: int) -> None:
    if not 0 <= M < N or not 0 < n <= N:
        raise DomainError(f"T(k, M, N, n) needs 0 <= M < N and 0 < n <= N, got M={M}, N={N}, n={n}")
