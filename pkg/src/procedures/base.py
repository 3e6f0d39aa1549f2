"""Interval procedures k -> (L(k), U(k)) and the comparison modes against a parameter."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Literal

from src.distributions.base import KIndexInterval
from src.utils.config import numerics_setting
from src.utils.errors import CertificationError, ProcedureError

Bound = Literal["lower", "upper"]

__all__ = [
    "Bound",
    "BoundsMode",
    "Direction",
    "IntervalProcedure",
    "KIndexInterval",
    "from_rule",
    "from_table",
]


class Direction(str, Enum):
    """Shared monotone direction of L(k) and U(k)."""

    NON_DECREASING = "nondecreasing"
    NON_INCREASING = "nonincreasing"


class BoundsMode(str, Enum):
    """
    Which comparisons define the coverage event.

    OPEN_OPEN is {L < theta < U}, CLOSED_CLOSED is {L <= theta <= U},
    CLOSED_OPEN is C_U = {L <= theta < U}, OPEN_CLOSED is C_L = {L < theta <= U}.
    """

    OPEN_OPEN = "open"
    CLOSED_CLOSED = "closed"
    CLOSED_OPEN = "closed-open"
    OPEN_CLOSED = "open-closed"

    @property
    def lower_inclusive(self) -> bool:
        return self in (BoundsMode.CLOSED_CLOSED, BoundsMode.CLOSED_OPEN)

    @property
    def upper_inclusive(self) -> bool:
        return self in (BoundsMode.CLOSED_CLOSED, BoundsMode.OPEN_CLOSED)

    def lower_test(self, theta: float) -> Callable[[float], bool]:
        """Predicate on an L value: L <= theta or L < theta."""
        if self.lower_inclusive:
            return lambda v: v <= theta
        return lambda v: v < theta

    def upper_test(self, theta: float) -> Callable[[float], bool]:
        """Predicate on a U value: theta <= U or theta < U."""
        if self.upper_inclusive:
            return lambda v: theta <= v
        return lambda v: theta < v


@dataclass(frozen=True)
class IntervalProcedure:
    """
    A monotone random-interval rule.

    Attributes:
        name: Human-readable label used in reports.
        direction: Monotone direction shared by both bounds.
        lower_rule: k -> L(k), defined for 0 <= k <= known_until (or every k when known_until is None).
        upper_rule: k -> U(k), same domain.
        support_max: Largest k in the support, None when unbounded.
        known_until: Last k with known bounds; None means the rules are defined for all k.
        tail_limits: Limits of (L(k), U(k)) as k -> infinity, for unbounded support.
        integer_valued: Bounds only take integer values (hypergeometric procedures).
    """

    name: str
    direction: Direction
    lower_rule: Callable[[int], float] = field(repr=False)
    upper_rule: Callable[[int], float] = field(repr=False)
    support_max: int | None
    known_until: int | None
    tail_limits: tuple[float, float] | None = None
    integer_valued: bool = False

    @property
    def unbounded(self) -> bool:
        return self.support_max is None

    def lower(self, k: int) -> float:
        self._check_known(k)
        return self.lower_rule(k)

    def upper(self, k: int) -> float:
        self._check_known(k)
        return self.upper_rule(k)

    def bound(self, which: Bound, k: int) -> float:
        return self.lower(k) if which == "lower" else self.upper(k)

    def limit(self, which: Bound) -> float | None:
        if self.tail_limits is None:
            return None
        return self.tail_limits[0] if which == "lower" else self.tail_limits[1]

    def tail_truth(self, which: Bound, test: Callable[[float], bool]) -> bool:
        """
        Decide ``test`` for every k beyond the known table at once.

        Tail values lie between the last known value and the tail limit, so the
        outcome is certified only when the test agrees at both ends.

        Raises:
            CertificationError: no tail limit, or the test is undecided on the tail.
        """
        limit = self.limit(which)
        if limit is None:
            raise CertificationError(f"{self.name}: no tail limit for {which} bound beyond k={self.known_until}")
        last = self.bound(which, int(self.known_until))  # type: ignore[arg-type]
        at_last, at_limit = test(last), test(limit)
        if at_last != at_limit:
            raise CertificationError(
                f"{self.name}: {which} bound beyond k={self.known_until} lies between "
                f"{last!r} and {limit!r}; comparison cannot be certified"
            )
        return at_last

    def covers(self, k: int, theta: float, mode: BoundsMode) -> bool:
        """Direct per-k test of L(k) <> theta <> U(k), independent of any search."""
        if k < 0 or (self.support_max is not None and k > self.support_max):
            return False
        low, up = mode.lower_test(theta), mode.upper_test(theta)
        if self.known_until is not None and k > self.known_until:
            return self.tail_truth("lower", low) and self.tail_truth("upper", up)
        return low(self.lower(k)) and up(self.upper(k))

    def values(self, which: Bound, upto: int) -> list[float]:
        return [self.bound(which, k) for k in range(upto + 1)]

    def shifted(self, lower_shift: float, upper_shift: float) -> "IntervalProcedure":
        """Procedure with L + lower_shift and U + upper_shift (integer transform for closed hypergeometric intervals)."""
        lower, upper = self.lower_rule, self.upper_rule
        limits = None
        if self.tail_limits is not None:
            limits = (self.tail_limits[0] + lower_shift, self.tail_limits[1] + upper_shift)
        return IntervalProcedure(
            name=f"{self.name}[L{lower_shift:+g},U{upper_shift:+g}]",
            direction=self.direction,
            lower_rule=lambda k: lower(k) + lower_shift,
            upper_rule=lambda k: upper(k) + upper_shift,
            support_max=self.support_max,
            known_until=self.known_until,
            tail_limits=limits,
            integer_valued=self.integer_valued,
        )

    def describe(self) -> str:
        support = "0..inf" if self.support_max is None else f"0..{self.support_max}"
        known = "rule" if self.known_until is None else f"table to k={self.known_until}"
        return f"{self.name} [{self.direction.value}, support {support}, {known}]"

    def _check_known(self, k: int) -> None:
        if k < 0 or (self.known_until is not None and k > self.known_until):
            raise ProcedureError(f"{self.name}: bounds unknown at k={k}")


def from_table(
    lower: Sequence[float],
    upper: Sequence[float],
    direction: Direction | str = Direction.NON_DECREASING,
    *,
    unbounded: bool = False,
    tail_limits: tuple[float, float] | None = None,
    integer_valued: bool = False,
    name: str = "table",
) -> IntervalProcedure:
    """
    Build and validate a procedure from explicit L and U tables indexed by k = 0, 1, ...

    With ``unbounded=True`` the table is a truncation of an infinite-support
    procedure and ``tail_limits`` describes what happens beyond it.

    Raises:
        ProcedureError: length mismatch, L(k) > U(k), direction violation, bad tail limits.

    Example:
        >>> proc = from_table([0.0, 0.05, 0.12], [0.31, 0.45, 0.60], "nondecreasing")
        >>> proc.upper(2)
        0.6
    """
    direction = Direction(direction)
    lows, ups = tuple(lower), tuple(upper)
    if len(lows) != len(ups):
        raise ProcedureError(f"table length mismatch: {len(lows)} lower vs {len(ups)} upper values")
    if not lows:
        raise ProcedureError("table must hold at least one k")
    if integer_valued:
        bad = [v for v in lows + ups if math.isfinite(v) and int(v) != v]
        if bad:
            raise ProcedureError(f"integer-valued procedure has non-integer bound {bad[0]!r}")
        lows = tuple(int(v) if math.isfinite(v) else v for v in lows)
        ups = tuple(int(v) if math.isfinite(v) else v for v in ups)
    last = len(lows) - 1
    proc = IntervalProcedure(
        name=name,
        direction=direction,
        lower_rule=lows.__getitem__,
        upper_rule=ups.__getitem__,
        support_max=None if unbounded else last,
        known_until=last,
        tail_limits=tail_limits,
        integer_valued=integer_valued,
    )
    validate(proc, last)
    if unbounded:
        _validate_tail(proc)
    return proc


def from_rule(
    lower: Callable[[int], float],
    upper: Callable[[int], float],
    direction: Direction | str,
    *,
    tail_limits: tuple[float, float] | None,
    name: str,
) -> IntervalProcedure:
    """Unbounded-support procedure whose bounds are computable at every k; rules are memoised."""
    proc = IntervalProcedure(
        name=name,
        direction=Direction(direction),
        lower_rule=lru_cache(maxsize=None)(lower),
        upper_rule=lru_cache(maxsize=None)(upper),
        support_max=None,
        known_until=None,
        tail_limits=tail_limits,
    )
    validate(proc, int(numerics_setting("monotone_check_upto")))
    return proc


def validate(proc: IntervalProcedure, upto: int) -> None:
    """Check L <= U and the declared direction for k = 0..upto."""
    prev_l = prev_u = None
    for k in range(upto + 1):
        lo, up = proc.lower(k), proc.upper(k)
        if math.isnan(lo) or math.isnan(up):
            raise ProcedureError(f"{proc.name}: NaN bound at k={k}")
        if lo > up:
            raise ProcedureError(f"{proc.name}: L({k})={lo!r} > U({k})={up!r}")
        if prev_l is not None and not (_ordered(proc.direction, prev_l, lo) and _ordered(proc.direction, prev_u, up)):
            raise ProcedureError(f"{proc.name}: bounds not {proc.direction.value} at k={k - 1}..{k}")
        prev_l, prev_u = lo, up


def _validate_tail(proc: IntervalProcedure) -> None:
    if proc.tail_limits is None:
        raise ProcedureError(f"{proc.name}: unbounded-support table needs tail limits")
    k = int(proc.known_until)  # type: ignore[arg-type]
    lim_l, lim_u = proc.tail_limits
    if lim_l > lim_u:
        raise ProcedureError(f"{proc.name}: tail limit of L ({lim_l!r}) exceeds that of U ({lim_u!r})")
    if not (_ordered(proc.direction, proc.lower(k), lim_l) and _ordered(proc.direction, proc.upper(k), lim_u)):
        raise ProcedureError(f"{proc.name}: tail limits contradict {proc.direction.value} bounds")


def _ordered(direction: Direction, before: float, after: float) -> bool:
    if direction is Direction.NON_DECREASING:
        return before <= after
    return before >= after
