"""Binary searches over monotone bounds: coverage events as k-intervals."""

from __future__ import annotations

from collections.abc import Callable

from src.distributions.base import KIndexInterval
from src.procedures.base import Bound, BoundsMode, Direction, IntervalProcedure
from src.utils.config import numerics_setting
from src.utils.errors import CertificationError


def k_interval_for(proc: IntervalProcedure, theta: float, mode: BoundsMode) -> KIndexInterval:
    """
    The set {k : L(k) <> theta <> U(k)} as a contiguous k-range.

    For a non-decreasing procedure {L <> theta} is a prefix of the support and
    {theta <> U} a suffix; a non-increasing one swaps the roles. Both are
    located by binary search, with exponential bracketing on unbounded support.

    Example:
        >>> proc = from_table([0.0, 0.2, 0.4], [0.5, 0.7, 0.9])
        >>> str(k_interval_for(proc, 0.2, BoundsMode.CLOSED_OPEN))
        '{0..1}'
    """
    increasing = proc.direction is Direction.NON_DECREASING
    lower_ok = predicate_range(proc, "lower", mode.lower_test(theta), prefix=increasing)
    upper_ok = predicate_range(proc, "upper", mode.upper_test(theta), prefix=not increasing)
    return lower_ok.intersect(upper_ok)


def values_strictly_between(proc: IntervalProcedure, which: Bound, a: float, b: float) -> KIndexInterval:
    """
    The k-range whose ``which`` bound lies strictly inside (a, b).

    Raises:
        CertificationError: infinitely many k qualify, or the tail cannot be decided.
    """
    increasing = proc.direction is Direction.NON_DECREASING
    above_a = predicate_range(proc, which, lambda v: v > a, prefix=not increasing)
    below_b = predicate_range(proc, which, lambda v: v < b, prefix=increasing)
    ks = above_a.intersect(below_b)
    if ks.unbounded:
        raise CertificationError(f"{proc.name}: infinitely many {which} bounds fall inside ({a!r}, {b!r})")
    return ks


def predicate_range(
    proc: IntervalProcedure,
    which: Bound,
    test: Callable[[float], bool],
    *,
    prefix: bool,
) -> KIndexInterval:
    """
    The k-range on which ``test(bound(k))`` holds, given that it is monotone in k.

    ``prefix=True`` means the test holds for small k and fails from some point on;
    ``prefix=False`` means the reverse.
    """
    holds = lambda k: test(proc.bound(which, k))  # noqa: E731
    if proc.known_until is not None:
        return _known_range(proc, which, test, holds, prefix)
    return _rule_range(proc, which, test, holds, prefix)


def _known_range(
    proc: IntervalProcedure,
    which: Bound,
    test: Callable[[float], bool],
    holds: Callable[[int], bool],
    prefix: bool,
) -> KIndexInterval:
    last = int(proc.known_until)  # type: ignore[arg-type]
    switch = _first_switch(holds, 0, last + 1, want=not prefix)
    if proc.support_max is not None:
        return KIndexInterval.span(0, switch - 1) if prefix else KIndexInterval.span(switch, last)
    tail = proc.tail_truth(which, test)
    if prefix:
        if switch <= last:
            return KIndexInterval.span(0, switch - 1)
        return KIndexInterval(lo=0, hi=None) if tail else KIndexInterval.span(0, last)
    if switch <= last:
        return KIndexInterval(lo=switch, hi=None)
    return KIndexInterval(lo=last + 1, hi=None) if tail else KIndexInterval.nothing()


def _rule_range(
    proc: IntervalProcedure,
    which: Bound,
    test: Callable[[float], bool],
    holds: Callable[[int], bool],
    prefix: bool,
) -> KIndexInterval:
    limit = proc.limit(which)
    if limit is not None and test(limit) == prefix:
        # the limit settles it: prefix tests hold everywhere, suffix tests nowhere
        return KIndexInterval(lo=0, hi=None) if prefix else KIndexInterval.nothing()
    want = not prefix
    if holds(0) == want:
        switch = 0
    else:
        lo, hi = 0, 1
        cap = int(numerics_setting("bracket_limit"))
        while holds(hi) != want:
            if hi >= cap:
                raise CertificationError(
                    f"{proc.name}: {which} bound never crosses the threshold up to k={cap}"
                )
            lo, hi = hi, hi * 2
        switch = _first_switch(holds, lo + 1, hi, want=want)
    return KIndexInterval.span(0, switch - 1) if prefix else KIndexInterval(lo=switch, hi=None)


def _first_switch(holds: Callable[[int], bool], lo: int, hi: int, *, want: bool) -> int:
    """Smallest k in [lo, hi) with holds(k) == want, or hi if none (holds is monotone)."""
    while lo < hi:
        mid = (lo + hi) // 2
        if holds(mid) == want:
            hi = mid
        else:
            lo = mid + 1
    return lo
