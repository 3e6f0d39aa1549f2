"""Classical exact and score confidence procedures shipped as built-ins."""

from __future__ import annotations

import math
from collections.abc import Callable

from scipy import special
from scipy.optimize import bisect
from scipy.stats import norm

from src.distributions.base import DistributionSpec, Family
from src.procedures.base import Direction, IntervalProcedure, from_rule, from_table
from src.procedures.registry import method_registry
from src.utils.config import numerics_setting
from src.utils.errors import DomainError


def clopper_pearson(n: int, delta: float) -> IntervalProcedure:
    """
    Equal-tailed exact binomial bounds.

    L(k) solves Pr{K >= k | n, L} = delta/2 with L(0) = 0 and U(k) solves
    Pr{K <= k | n, U} = delta/2 with U(n) = 1, both by bisection on [0, 1].

    Example:
        >>> proc = clopper_pearson(10, 0.05)
        >>> round(proc.upper(0), 6)
        0.308497
    """
    _check(n, delta)
    half = delta / 2.0
    xtol = float(numerics_setting("bisection_xtol"))
    lower = [0.0]
    for k in range(1, n + 1):
        lower.append(bisect(lambda p, k=k: special.bdtrc(k - 1, n, p) - half, 0.0, 1.0, xtol=xtol))
    upper = []
    for k in range(n):
        upper.append(bisect(lambda p, k=k: special.bdtr(k, n, p) - half, 0.0, 1.0, xtol=xtol))
    upper.append(1.0)
    return from_table(lower, upper, Direction.NON_DECREASING, name=f"clopper-pearson(n={n}, delta={delta:g})")


def wilson_score(n: int, delta: float) -> IntervalProcedure:
    """Wilson score interval for a binomial proportion, clipped to [0, 1]."""
    _check(n, delta)
    z = float(norm.ppf(1.0 - delta / 2.0))
    lower, upper = [], []
    for k in range(n + 1):
        phat = k / n
        centre = phat + z * z / (2 * n)
        spread = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
        scale = 1 + z * z / n
        lower.append(max(0.0, (centre - spread) / scale))
        upper.append(min(1.0, (centre + spread) / scale))
    return from_table(lower, upper, Direction.NON_DECREASING, name=f"wilson(n={n}, delta={delta:g})")


def garwood_poisson(n_samples: int, delta: float) -> IntervalProcedure:
    """
    Equal-tailed exact Poisson bounds on lambda for K = X_1 + ... + X_n.

    L(k) solves Pr{K >= k | n lambda} = delta/2 (L(0) = 0), U(k) solves
    Pr{K <= k | n lambda} = delta/2. Both grow without bound, so the tail
    limits are (inf, inf).
    """
    _check(n_samples, delta)
    half = delta / 2.0
    xtol = float(numerics_setting("bisection_xtol"))

    def lower(k: int) -> float:
        if k == 0:
            return 0.0
        f = lambda lam: special.pdtrc(k - 1, n_samples * lam) - half  # noqa: E731
        return bisect(f, 0.0, _bracket(f, k, n_samples), xtol=xtol)

    def upper(k: int) -> float:
        f = lambda lam: half - special.pdtr(k, n_samples * lam)  # noqa: E731
        return bisect(f, 0.0, _bracket(f, k, n_samples), xtol=xtol)

    return from_rule(
        lower,
        upper,
        Direction.NON_DECREASING,
        tail_limits=(math.inf, math.inf),
        name=f"garwood(n={n_samples}, delta={delta:g})",
    )


def _bracket(f: Callable[[float], float], k: int, n_samples: int) -> float:
    """Right end of a sign-changing bracket for an increasing f with f(0) < 0."""
    hi = (k + 1.0) / n_samples
    while f(hi) <= 0:
        hi *= 2.0
    return hi


def _check(n: int, delta: float) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta={delta} outside (0, 1)")


@method_registry.register(
    name="clopper-pearson",
    description="Exact equal-tailed binomial interval (Clopper-Pearson).",
    family=Family.BINOMIAL,
)
def _build_clopper_pearson(spec: DistributionSpec, delta: float) -> IntervalProcedure:
    return clopper_pearson(spec.n_samples, delta)


@method_registry.register(
    name="wilson",
    description="Wilson score interval for a binomial proportion.",
    family=Family.BINOMIAL,
)
def _build_wilson(spec: DistributionSpec, delta: float) -> IntervalProcedure:
    return wilson_score(spec.n_samples, delta)


@method_registry.register(
    name="garwood",
    description="Exact equal-tailed Poisson interval (Garwood).",
    family=Family.POISSON,
)
def _build_garwood(spec: DistributionSpec, delta: float) -> IntervalProcedure:
    return garwood_poisson(spec.n_samples, delta)
