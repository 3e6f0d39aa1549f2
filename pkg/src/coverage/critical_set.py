"""Finite parameter sets on which worst-case coverage is attained."""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

from src.procedures.base import Bound, Direction, IntervalProcedure
from src.procedures.search import values_strictly_between
from src.utils.errors import DomainError, ProcedureError
from src.utils.logging import get_logger

logger = get_logger(__name__)


class ProvenanceKind(str, Enum):
    ENDPOINT_A = "endpoint-a"
    ENDPOINT_B = "endpoint-b"
    LOWER_BREAK = "L"
    UPPER_BREAK = "U"


@dataclass(frozen=True, order=True)
class Provenance:
    """Where a critical value came from; ``k`` is set for L(k)/U(k) breakpoints."""

    kind: ProvenanceKind
    k: int | None = None

    def __str__(self) -> str:
        if self.k is None:
            return self.kind.value
        return f"{self.kind.value}({self.k})"


@dataclass(frozen=True)
class CriticalPoint:
    value: float
    provenance: frozenset[Provenance]

    @property
    def is_endpoint(self) -> bool:
        return any(p.kind in (ProvenanceKind.ENDPOINT_A, ProvenanceKind.ENDPOINT_B) for p in self.provenance)

    @property
    def is_lower_break(self) -> bool:
        return any(p.kind is ProvenanceKind.LOWER_BREAK for p in self.provenance)

    @property
    def is_upper_break(self) -> bool:
        return any(p.kind is ProvenanceKind.UPPER_BREAK for p in self.provenance)

    def label(self) -> str:
        """Single breakpoint tag: endpoint, L, U or LU."""
        if self.is_endpoint:
            return "endpoint"
        if self.is_lower_break and self.is_upper_break:
            return "LU"
        if self.is_lower_break:
            return "L"
        if self.is_upper_break:
            return "U"
        return "none"

    def describe_provenance(self) -> str:
        return ",".join(str(p) for p in sorted(self.provenance))


@dataclass(frozen=True)
class CriticalSet:
    """Sorted, deduplicated critical values over the range [a, b]; first is a, last is b."""

    points: tuple[CriticalPoint, ...]
    a: float
    b: float

    def __iter__(self) -> Iterator[CriticalPoint]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def values(self) -> list[float]:
        return [p.value for p in self.points]

    def interior(self) -> list[CriticalPoint]:
        return [p for p in self.points if not p.is_endpoint]

    def gaps(self) -> list[tuple[float, float]]:
        """Consecutive pairs of distinct critical values."""
        vals = self.values()
        return list(zip(vals, vals[1:]))


def breakpoints_continuous(proc: IntervalProcedure, a: float, b: float) -> CriticalSet:
    """
    {a, b} together with every L(k) and U(k) strictly inside (a, b).

    On unbounded support the contributing k form one contiguous range per
    bound, located by bracketing and binary search.

    Raises:
        DomainError: a >= b.
        CertificationError: completeness cannot be certified from the procedure's tail.
    """
    if not a < b:
        raise DomainError(f"range: a must be < b, got a={a!r}, b={b!r}")
    cset = _collect(proc, a, b)
    logger.debug("critical_set_built", procedure=proc.name, points=len(cset), a=a, b=b)
    return cset


def breakpoints_hypergeom(proc: IntervalProcedure, a: int, b: int, N: int) -> CriticalSet:
    """
    The integer critical set I_UL = {a, b} together with L(k), U(k) strictly inside (a, b).

    Raises:
        DomainError: range not 0 <= a < b <= N with integer ends.
        ProcedureError: procedure not non-decreasing or not integer-valued.
    """
    if int(a) != a or int(b) != b:
        raise DomainError(f"range: hypergeometric range must be integers, got {a!r}:{b!r}")
    if not 0 <= a < b <= N:
        raise DomainError(f"range: need 0 <= a < b <= N={N}, got {a}:{b}")
    if proc.direction is not Direction.NON_DECREASING:
        raise ProcedureError(f"{proc.name}: hypergeometric procedures must be non-decreasing")
    if not proc.integer_valued:
        raise ProcedureError(f"{proc.name}: hypergeometric procedures must be integer-valued")
    return _collect(proc, int(a), int(b))


def gap_violations(proc: IntervalProcedure, cset: CriticalSet) -> list[tuple[Bound, int, float]]:
    """Bounds that fall strictly between consecutive critical values; empty for a correct set."""
    offending: list[tuple[Bound, int, float]] = []
    for lo, hi in cset.gaps():
        for which in ("lower", "upper"):
            ks = values_strictly_between(proc, which, lo, hi)
            if not ks.empty:
                for k in range(int(ks.lo), int(ks.hi) + 1):  # type: ignore[arg-type]
                    offending.append((which, k, proc.bound(which, k)))
    return offending


def _collect(proc: IntervalProcedure, a: float, b: float) -> CriticalSet:
    tags: dict[float, set[Provenance]] = defaultdict(set)
    tags[a].add(Provenance(ProvenanceKind.ENDPOINT_A))
    tags[b].add(Provenance(ProvenanceKind.ENDPOINT_B))
    for which, kind in (("lower", ProvenanceKind.LOWER_BREAK), ("upper", ProvenanceKind.UPPER_BREAK)):
        ks = values_strictly_between(proc, which, a, b)
        if ks.empty:
            continue
        for k in range(int(ks.lo), int(ks.hi) + 1):  # type: ignore[arg-type]
            value = proc.bound(which, k)
            if not math.isfinite(value) or not a < value < b:
                raise ProcedureError(f"{proc.name}: {which}({k})={value!r} breaks monotonicity inside ({a}, {b})")
            tags[value].add(Provenance(kind, k))
    points = tuple(CriticalPoint(value=v, provenance=frozenset(tags[v])) for v in sorted(tags))
    return CriticalSet(points=points, a=a, b=b)
