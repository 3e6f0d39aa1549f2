"""Result models for coverage analyses."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, InstanceOf

from src.coverage.critical_set import CriticalSet
from src.distributions.base import DistributionSpec
from src.procedures.base import BoundsMode


class Quantity(str, Enum):
    """Evaluated coverage quantity: open coverage, C, C_U or C_L."""

    OPEN = "C_open"
    C = "C"
    C_U = "C_U"
    C_L = "C_L"


_QUANTITY_ORDER = {Quantity.OPEN: 0, Quantity.C: 1, Quantity.C_U: 2, Quantity.C_L: 3}


class Evaluation(BaseModel):
    """
    One coverage evaluation at a critical value.

    Attributes:
        theta: Parameter value.
        quantity: Which coverage probability was evaluated.
        value: Its floating value.
        exact: Exact rational value (hypergeometric exact path only).
        candidate: Whether this entry takes part in the infimum.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theta: int | float
    quantity: Quantity
    value: float
    exact: Fraction | None = None
    candidate: bool = True

    def sort_key(self) -> tuple[float, int]:
        return self.theta, _QUANTITY_ORDER[self.quantity]


class CoverageReport(BaseModel):
    """
    Worst-case coverage over a parameter range.

    ``attained`` is a reporting aid: False only when every witness is a
    one-sided limit C_U/C_L strictly below C at the same point and no endpoint
    value reaches the infimum.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: DistributionSpec
    procedure: str
    bounds_mode: BoundsMode
    a: int | float
    b: int | float
    infimum: float
    infimum_exact: Fraction | None = None
    attained: bool
    witnesses: list[Evaluation]
    evaluations: list[Evaluation]
    critical_set: InstanceOf[CriticalSet] | None = Field(default=None, repr=False)
    unimodality_ok: bool | None = None
