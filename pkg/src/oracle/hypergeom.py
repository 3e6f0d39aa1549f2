"""Exhaustive hypergeometric scans over every integer M."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from scipy import stats

from src.distributions.base import DistributionSpec, Family
from src.distributions.exact import pmf_numerator
from src.procedures.base import BoundsMode, IntervalProcedure
from src.utils.config import config_setting
from src.utils.errors import DomainError


def exhaustive_min_hypergeom(
    spec: DistributionSpec,
    proc: IntervalProcedure,
    a: int,
    b: int,
    mode: BoundsMode = BoundsMode.OPEN_OPEN,
    *,
    exact: bool | None = None,
) -> tuple[int, Fraction | float]:
    """(M*, value) minimising Pr{L(K) <> M <> U(K) | M} over every integer M in [a, b]; first M on ties."""
    scan = hypergeom_scan(spec, proc, a, b, mode, exact=exact)
    best = min(value for _, value in scan)
    return next((M, value) for M, value in scan if value == best)


def hypergeom_scan(
    spec: DistributionSpec,
    proc: IntervalProcedure,
    a: int,
    b: int,
    mode: BoundsMode = BoundsMode.OPEN_OPEN,
    *,
    exact: bool | None = None,
) -> list[tuple[int, Fraction | float]]:
    """
    Coverage at each M = a..b, comparing every k against M directly.

    Exact fractions when ``exact`` (default: N within the configured population limit).
    """
    if spec.family is not Family.HYPERGEOMETRIC:
        raise DomainError(f"exhaustive scan is hypergeometric-only, got {spec.family.value}")
    N, n = int(spec.N_population), spec.n_samples  # type: ignore[arg-type]
    if int(a) != a or int(b) != b or not 0 <= a <= b <= N:
        raise DomainError(f"range: need integers 0 <= a <= b <= N={N}, got {a}:{b}")
    if exact is None:
        exact = N <= int(config_setting("oracle", "exact_population_limit"))
    denominator = comb(N, n)
    out: list[tuple[int, Fraction | float]] = []
    for M in range(int(a), int(b) + 1):
        ks = [k for k in range(n + 1) if proc.covers(k, M, mode)]
        if exact:
            out.append((M, Fraction(sum(pmf_numerator(k, M, N, n) for k in ks), denominator)))
        else:
            out.append((M, float(stats.hypergeom(N, M, n).pmf(ks).sum()) if ks else 0.0))
    return out
