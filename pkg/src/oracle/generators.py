"""Seeded random monotone procedures for engine-versus-oracle runs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.distributions.base import DistributionSpec, Family
from src.procedures.base import Direction, IntervalProcedure, from_table
from src.utils.errors import DomainError

TABLE_LAST_K = 60
TIE_PROBABILITY = 0.3


@dataclass(frozen=True)
class GeneratedCase:
    spec: DistributionSpec
    proc: IntervalProcedure
    a: float
    b: float

    def describe(self) -> str:
        return f"{self.spec.describe()} {self.proc.name} on [{self.a!r}, {self.b!r}]"


def random_case(family: Family, rng: np.random.Generator, *, N: int | None = None) -> GeneratedCase:
    """One random case; hypergeometric cases need the population size ``N``."""
    if family is Family.BINOMIAL:
        return random_binomial(rng)
    if family is Family.POISSON:
        return random_poisson(rng)
    if family is Family.NEG_BINOMIAL:
        return random_negbinomial(rng)
    if N is None:
        raise DomainError("hypergeometric cases need N")
    return random_hypergeom(rng, N)


def random_binomial(rng: np.random.Generator) -> GeneratedCase:
    n = int(rng.integers(1, 31))
    lower, upper = _monotone_pair(rng, n + 1, 0.0, 1.0)
    a, b = _range(rng, 0.0, 1.0, lower + upper)
    proc = from_table(lower, upper, Direction.NON_DECREASING, name=f"random-binomial(n={n})")
    return GeneratedCase(DistributionSpec.binomial(n), proc, a, b)


def random_poisson(rng: np.random.Generator) -> GeneratedCase:
    """Table to k=60 with values in [0, 15]; L(60) = U(60) = 16 and both tails grow without bound."""
    n_samples = int(rng.integers(1, 4))
    lower, upper = _monotone_pair(rng, TABLE_LAST_K + 1, 0.0, 15.0)
    lower[-1] = upper[-1] = 16.0
    a, b = _range(rng, 0.0, 15.0, lower + upper)
    proc = from_table(
        lower,
        upper,
        Direction.NON_DECREASING,
        unbounded=True,
        tail_limits=(float("inf"), float("inf")),
        name=f"random-poisson(n={n_samples})",
    )
    return GeneratedCase(DistributionSpec.poisson(n_samples), proc, a, b)


def random_negbinomial(rng: np.random.Generator) -> GeneratedCase:
    """Non-increasing table to k=60 in (0.05, 0.99); L(60) = U(60) = 0.02 with both tails tending to 0."""
    r = float(rng.choice([1.0, 2.0, 3.5]))
    lower, upper = _monotone_pair(rng, TABLE_LAST_K + 1, 0.05, 0.99)
    lower, upper = lower[::-1], upper[::-1]
    lower[-1] = upper[-1] = 0.02
    a, b = _range(rng, 0.04, 0.99, lower + upper)
    proc = from_table(
        lower,
        upper,
        Direction.NON_INCREASING,
        unbounded=True,
        tail_limits=(0.0, 0.0),
        name=f"random-negbinomial(r={r:g})",
    )
    return GeneratedCase(DistributionSpec.negbinomial(r), proc, a, b)


def random_hypergeom(rng: np.random.Generator, N: int) -> GeneratedCase:
    n = int(rng.integers(1, min(N, 30) + 1))
    lower = sorted(int(v) for v in rng.integers(0, N + 1, n + 1))
    upper = sorted(int(v) for v in rng.integers(0, N + 1, n + 1))
    upper = [max(lo, up) for lo, up in zip(lower, upper)]
    if rng.random() < 0.5:
        a, b = 0, N
    else:
        a, b = sorted(int(v) for v in rng.choice(N + 1, size=2, replace=False))
    proc = from_table(lower, upper, Direction.NON_DECREASING, integer_valued=True, name=f"random-hypergeometric(n={n})")
    return GeneratedCase(DistributionSpec.hypergeometric(N, n), proc, a, b)


def _monotone_pair(rng: np.random.Generator, size: int, lo: float, hi: float) -> tuple[list[float], list[float]]:
    """Sorted L and U with U >= L pointwise; some values rounded so that ties occur."""
    lower = np.sort(_with_ties(rng, rng.uniform(lo, hi, size), lo, hi))
    upper = np.sort(_with_ties(rng, rng.uniform(lo, hi, size), lo, hi))
    upper = np.maximum(upper, lower)
    return lower.tolist(), upper.tolist()


def _with_ties(rng: np.random.Generator, values: np.ndarray, lo: float, hi: float) -> np.ndarray:
    coarse = rng.random(values.size) < TIE_PROBABILITY
    step = (hi - lo) / 20.0
    rounded = lo + np.round((values - lo) / step) * step
    return np.where(coarse, np.clip(rounded, lo, hi), values)


def _range(rng: np.random.Generator, lo: float, hi: float, values: list[float]) -> tuple[float, float]:
    """Random a < b inside [lo, hi]; sometimes an end is snapped onto a procedure value."""
    while True:
        a, b = sorted(float(v) for v in rng.uniform(lo, hi, 2))
        inside = [v for v in values if lo <= v <= hi]
        if inside and rng.random() < 0.2:
            a = min(a, float(rng.choice(inside)))
        if inside and rng.random() < 0.2:
            b = max(b, float(rng.choice(inside)))
        if a < b:
            return a, b
