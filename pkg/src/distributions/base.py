"""Distribution specs and contiguous k-ranges."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.utils.errors import DomainError


class Family(str, Enum):
    """Discrete families whose coverage the engine can analyse."""

    BINOMIAL = "binomial"
    POISSON = "poisson"
    NEG_BINOMIAL = "negbinomial"
    HYPERGEOMETRIC = "hypergeometric"


class DistributionSpec(BaseModel):
    """
    One discrete family with its nuisance parameters fixed.

    The free parameter is p (binomial, negative binomial), lambda (Poisson)
    or the integer M (hypergeometric).

    Attributes:
        family: Which distribution K follows.
        n_samples: Binomial trials, Poisson sample count (K ~ Poisson(n * lambda)),
            hypergeometric draws; always 1 for the negative binomial.
        r: Negative binomial shape; r = 1 is the geometric case.
        N_population: Hypergeometric population size.
    """

    model_config = ConfigDict(frozen=True)

    family: Family
    n_samples: int = Field(default=1, ge=1)
    r: float | None = None
    N_population: int | None = None

    @model_validator(mode="after")
    def _check_family_fields(self) -> "DistributionSpec":
        if self.family is Family.NEG_BINOMIAL:
            if self.r is None or not self.r > 0 or not math.isfinite(self.r):
                raise ValueError("negative binomial requires r > 0")
            if self.n_samples != 1:
                raise ValueError("negative binomial uses n_samples = 1")
        elif self.r is not None:
            raise ValueError(f"r is only meaningful for the negative binomial, not {self.family.value}")
        if self.family is Family.HYPERGEOMETRIC:
            if self.N_population is None or self.n_samples > self.N_population:
                raise ValueError("hypergeometric requires 0 < n <= N")
        elif self.N_population is not None:
            raise ValueError(f"N is only meaningful for the hypergeometric, not {self.family.value}")
        return self

    @classmethod
    def binomial(cls, n: int) -> "DistributionSpec":
        return cls(family=Family.BINOMIAL, n_samples=n)

    @classmethod
    def poisson(cls, n_samples: int = 1) -> "DistributionSpec":
        return cls(family=Family.POISSON, n_samples=n_samples)

    @classmethod
    def negbinomial(cls, r: float) -> "DistributionSpec":
        return cls(family=Family.NEG_BINOMIAL, r=float(r))

    @classmethod
    def geometric(cls) -> "DistributionSpec":
        return cls.negbinomial(1.0)

    @classmethod
    def hypergeometric(cls, N: int, n: int) -> "DistributionSpec":
        return cls(family=Family.HYPERGEOMETRIC, n_samples=n, N_population=N)

    @property
    def support_max(self) -> int | None:
        """Largest value K can take, or None for unbounded support."""
        if self.family in (Family.BINOMIAL, Family.HYPERGEOMETRIC):
            return self.n_samples
        return None

    @property
    def integer_parameter(self) -> bool:
        return self.family is Family.HYPERGEOMETRIC

    @property
    def parameter_bounds(self) -> tuple[float, float]:
        """Closed hull of the legal parameter values."""
        if self.family is Family.BINOMIAL or self.family is Family.NEG_BINOMIAL:
            return 0.0, 1.0
        if self.family is Family.POISSON:
            return 0.0, math.inf
        return 0, self.N_population  # type: ignore[return-value]

    def check_param(self, theta: float | int) -> None:
        """Raise DomainError unless theta is a legal parameter value for this family."""
        if self.family is Family.HYPERGEOMETRIC:
            if isinstance(theta, bool) or int(theta) != theta:
                raise DomainError(f"hypergeometric M must be an integer, got {theta!r}")
            if not 0 <= theta <= self.N_population:  # type: ignore[operator]
                raise DomainError(f"M={theta} outside [0, {self.N_population}]")
            return
        if not isinstance(theta, (int, float)) or math.isnan(theta):
            raise DomainError(f"parameter must be a real number, got {theta!r}")
        if self.family is Family.BINOMIAL and not 0.0 <= theta <= 1.0:
            raise DomainError(f"binomial p={theta} outside [0, 1]")
        if self.family is Family.POISSON and not 0.0 <= theta < math.inf:
            raise DomainError(f"Poisson lambda={theta} must be finite and >= 0")
        if self.family is Family.NEG_BINOMIAL and not 0.0 < theta < 1.0:
            raise DomainError(f"negative binomial p={theta} outside (0, 1)")

    def describe(self) -> str:
        if self.family is Family.BINOMIAL:
            return f"binomial(n={self.n_samples})"
        if self.family is Family.POISSON:
            return f"poisson(n={self.n_samples})"
        if self.family is Family.NEG_BINOMIAL:
            return f"negbinomial(r={self.r:.17g})"
        return f"hypergeometric(N={self.N_population}, n={self.n_samples})"


@dataclass(frozen=True)
class KIndexInterval:
    """
    Contiguous integer range {lo..hi}; ``lo=None`` is minus infinity, ``hi=None`` plus infinity.

    The event {K in I} for a coverage event is always one of these.
    """

    lo: int | None = 0
    hi: int | None = None
    empty: bool = False

    def __post_init__(self) -> None:
        if not self.empty and self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise DomainError(f"malformed k-interval {self.lo}..{self.hi}")

    @classmethod
    def nothing(cls) -> "KIndexInterval":
        return cls(lo=0, hi=-1, empty=True)

    @classmethod
    def span(cls, lo: int | None, hi: int | None) -> "KIndexInterval":
        """Build lo..hi, collapsing to the empty interval when lo > hi."""
        if lo is not None and hi is not None and lo > hi:
            return cls.nothing()
        return cls(lo=lo, hi=hi)

    def contains(self, k: int) -> bool:
        if self.empty:
            return False
        return (self.lo is None or k >= self.lo) and (self.hi is None or k <= self.hi)

    def intersect(self, other: "KIndexInterval") -> "KIndexInterval":
        if self.empty or other.empty:
            return KIndexInterval.nothing()
        lo = _max_opt(self.lo, other.lo)
        hi = _min_opt(self.hi, other.hi)
        return KIndexInterval.span(lo, hi)

    @property
    def unbounded(self) -> bool:
        return not self.empty and self.hi is None

    def __str__(self) -> str:
        if self.empty:
            return "{}"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{{{lo}..{hi}}}"


def _max_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
