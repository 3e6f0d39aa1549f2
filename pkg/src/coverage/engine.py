"""Exact worst-case coverage over a parameter range via critical-set reduction."""

from __future__ import annotations

import numpy as np

from src.coverage.critical_set import (
    CriticalPoint,
    CriticalSet,
    breakpoints_continuous,
    breakpoints_hypergeom,
)
from src.coverage.report import CoverageReport, Evaluation, Quantity
from src.distributions.base import DistributionSpec, Family
from src.distributions.exact import interval_prob_exact
from src.distributions.kernels import interval_prob
from src.procedures.base import BoundsMode, Direction, IntervalProcedure
from src.procedures.search import k_interval_for
from src.utils.config import config_setting
from src.utils.errors import DomainError, ProcedureError
from src.utils.logging import get_logger

logger = get_logger(__name__)

UNIMODAL_TOL = 1e-12


def coverage_at(spec: DistributionSpec, proc: IntervalProcedure, theta: float, mode: BoundsMode) -> float:
    """
    Pr{L(K) <> theta <> U(K) | theta} with comparisons chosen by ``mode``.

    Example:
        >>> proc = from_table([0.0, 0.5], [0.5, 1.0])
        >>> coverage_at(DistributionSpec.binomial(1), proc, 0.25, BoundsMode.OPEN_OPEN)
        0.75
    """
    check_compatible(spec, proc)
    spec.check_param(theta)
    return interval_prob(spec, theta, k_interval_for(proc, theta, mode))


def coverage_at_exact(spec: DistributionSpec, proc: IntervalProcedure, M: int, mode: BoundsMode):
    """Hypergeometric coverage at integer M as an exact ``Fraction``."""
    check_compatible(spec, proc)
    return interval_prob_exact(spec, M, k_interval_for(proc, M, mode))


def min_open_coverage(spec: DistributionSpec, proc: IntervalProcedure, a: float, b: float) -> CoverageReport:
    """
    Minimum of Pr{L(K) < theta < U(K) | theta} over theta in [a, b].

    The minimum is attained on the critical set, so only those points are evaluated.
    """
    _check_continuous(spec, proc, a, b)
    if a == b:
        return _point_report(spec, proc, a, BoundsMode.OPEN_OPEN, Quantity.OPEN)
    cset = breakpoints_continuous(proc, a, b)
    evaluations = [
        Evaluation(theta=p.value, quantity=Quantity.OPEN, value=coverage_at(spec, proc, p.value, BoundsMode.OPEN_OPEN))
        for p in cset
    ]
    infimum, witnesses = _reduce(evaluations)
    unimodal = _maybe_check_unimodality(spec, proc, cset, BoundsMode.OPEN_OPEN)
    logger.info("open_coverage_done", procedure=proc.name, points=len(cset), infimum=infimum)
    return CoverageReport(
        spec=spec,
        procedure=proc.name,
        bounds_mode=BoundsMode.OPEN_OPEN,
        a=a,
        b=b,
        infimum=infimum,
        attained=True,
        witnesses=witnesses,
        evaluations=evaluations,
        critical_set=cset,
        unimodality_ok=unimodal,
    )


def inf_closed_coverage(spec: DistributionSpec, proc: IntervalProcedure, a: float, b: float) -> CoverageReport:
    """
    Infimum of Pr{L(K) <= theta <= U(K) | theta} over theta in [a, b].

    Candidates are C(a), C(b), C_U at U-breakpoints and C_L at L-breakpoints.
    The one-sided limits C_U(a) and C_L(b) are candidates as well; they equal
    C(a) and C(b) unless a bound sits exactly on the endpoint.
    """
    _check_continuous(spec, proc, a, b)
    if a == b:
        return _point_report(spec, proc, a, BoundsMode.CLOSED_CLOSED, Quantity.C)
    cset = breakpoints_continuous(proc, a, b)
    evaluations: list[Evaluation] = []
    for point in cset:
        evaluations.extend(_closed_evaluations(spec, proc, point, cset))
    infimum, witnesses = _reduce(evaluations)
    closed_at = {e.theta: e.value for e in evaluations if e.quantity is Quantity.C}
    attained = any(
        (w.quantity is Quantity.C) or closed_at[w.theta] == infimum for w in witnesses
    )
    unimodal = _maybe_check_unimodality(spec, proc, cset, BoundsMode.CLOSED_CLOSED)
    logger.info("closed_coverage_done", procedure=proc.name, points=len(cset), infimum=infimum, attained=attained)
    return CoverageReport(
        spec=spec,
        procedure=proc.name,
        bounds_mode=BoundsMode.CLOSED_CLOSED,
        a=a,
        b=b,
        infimum=infimum,
        attained=attained,
        witnesses=witnesses,
        evaluations=evaluations,
        critical_set=cset,
        unimodality_ok=unimodal,
    )


def min_hypergeom_coverage(
    spec: DistributionSpec,
    proc: IntervalProcedure,
    a: int,
    b: int,
    mode: BoundsMode = BoundsMode.OPEN_OPEN,
    *,
    exact: bool | None = None,
) -> CoverageReport:
    """
    Minimum of Pr{L(K) < M < U(K) | M} over integer M in [a, b], evaluated on I_UL.

    ``mode=CLOSED_CLOSED`` analyses [L, U] through the integer transform
    L - 1 < M < U + 1. ``exact`` defaults to True for N up to the configured
    population limit, in which case every value is an exact ``Fraction``.
    """
    if spec.family is not Family.HYPERGEOMETRIC:
        raise DomainError(f"min_hypergeom_coverage needs a hypergeometric spec, got {spec.family.value}")
    if mode not in (BoundsMode.OPEN_OPEN, BoundsMode.CLOSED_CLOSED):
        raise DomainError(f"hypergeometric analysis supports open or closed bounds, not {mode.value}")
    check_compatible(spec, proc)
    N = int(spec.N_population)  # type: ignore[arg-type]
    if exact is None:
        exact = N <= int(config_setting("oracle", "exact_population_limit"))
    target = proc.shifted(-1, 1) if mode is BoundsMode.CLOSED_CLOSED else proc
    if a == b:
        spec.check_param(a)
        cset = CriticalSet(points=(), a=a, b=b)
        thetas = [int(a)]
    else:
        cset = breakpoints_hypergeom(target, a, b, N)
        thetas = [int(p.value) for p in cset]
    evaluations = []
    for M in thetas:
        if exact:
            value = coverage_at_exact(spec, target, M, BoundsMode.OPEN_OPEN)
            evaluations.append(Evaluation(theta=M, quantity=Quantity.OPEN, value=float(value), exact=value))
        else:
            value = coverage_at(spec, target, M, BoundsMode.OPEN_OPEN)
            evaluations.append(Evaluation(theta=M, quantity=Quantity.OPEN, value=value))
    if exact:
        best = min(e.exact for e in evaluations)  # type: ignore[type-var]
        witnesses = [e for e in evaluations if e.exact == best]
        infimum, infimum_exact = float(best), best  # type: ignore[arg-type]
    else:
        infimum, witnesses = _reduce(evaluations)
        infimum_exact = None
    logger.info("hypergeom_coverage_done", procedure=proc.name, points=len(thetas), infimum=infimum, exact=exact)
    return CoverageReport(
        spec=spec,
        procedure=proc.name,
        bounds_mode=mode,
        a=a,
        b=b,
        infimum=infimum,
        infimum_exact=infimum_exact,
        attained=True,
        witnesses=witnesses,
        evaluations=evaluations,
        critical_set=cset if a != b else None,
    )


def coverage_curve(
    spec: DistributionSpec,
    proc: IntervalProcedure,
    a: float,
    b: float,
    mode: BoundsMode,
    n_points: int,
) -> list[tuple[float, float, CriticalPoint | None]]:
    """
    Coverage at ``n_points`` evenly spaced values of [a, b] plus every critical point, sorted by theta.

    Hypergeometric grids are rounded to integers before deduplication.
    """
    if n_points < 2:
        raise DomainError(f"points must be >= 2, got {n_points}")
    if spec.family is Family.HYPERGEOMETRIC:
        check_compatible(spec, proc)
        cset = breakpoints_hypergeom(proc, a, b, int(spec.N_population))  # type: ignore[arg-type]
        grid = {int(v) for v in np.rint(np.linspace(a, b, n_points))}
    else:
        _check_continuous(spec, proc, a, b)
        cset = breakpoints_continuous(proc, a, b)
        grid = {float(v) for v in np.linspace(a, b, n_points)}
        grid.update((a, b))
    by_value = {p.value: p for p in cset}
    thetas = sorted(grid | set(by_value))
    return [(t, coverage_at(spec, proc, t, mode), by_value.get(t)) for t in thetas]


def check_compatible(spec: DistributionSpec, proc: IntervalProcedure) -> None:
    """The procedure's support must match the family's."""
    if spec.support_max != proc.support_max:
        have = "0..inf" if proc.support_max is None else f"0..{proc.support_max}"
        want = "0..inf" if spec.support_max is None else f"0..{spec.support_max}"
        raise ProcedureError(f"{proc.name}: support {have} does not match {spec.describe()} support {want}")
    if spec.family is Family.HYPERGEOMETRIC and proc.direction is not Direction.NON_DECREASING:
        raise ProcedureError(f"{proc.name}: hypergeometric procedures must be non-decreasing")


def _check_continuous(spec: DistributionSpec, proc: IntervalProcedure, a: float, b: float) -> None:
    if spec.family is Family.HYPERGEOMETRIC:
        raise DomainError("hypergeometric ranges are analysed with min_hypergeom_coverage")
    check_compatible(spec, proc)
    spec.check_param(a)
    spec.check_param(b)
    if a > b:
        raise DomainError(f"range: a must be < b, got a={a!r}, b={b!r}")


def _closed_evaluations(
    spec: DistributionSpec, proc: IntervalProcedure, point: CriticalPoint, cset: CriticalSet
) -> list[Evaluation]:
    theta = point.value
    closed = coverage_at(spec, proc, theta, BoundsMode.CLOSED_CLOSED)
    out = [Evaluation(theta=theta, quantity=Quantity.C, value=closed, candidate=point.is_endpoint)]
    if point.is_upper_break or theta == cset.a:
        out.append(
            Evaluation(theta=theta, quantity=Quantity.C_U, value=coverage_at(spec, proc, theta, BoundsMode.CLOSED_OPEN))
        )
    if point.is_lower_break or theta == cset.b:
        out.append(
            Evaluation(theta=theta, quantity=Quantity.C_L, value=coverage_at(spec, proc, theta, BoundsMode.OPEN_CLOSED))
        )
    return out


def _reduce(evaluations: list[Evaluation]) -> tuple[float, list[Evaluation]]:
    """Minimum over candidate entries; witnesses in ascending theta, ties kept."""
    candidates = [e for e in evaluations if e.candidate]
    infimum = min(e.value for e in candidates)
    witnesses = sorted((e for e in candidates if e.value == infimum), key=Evaluation.sort_key)
    return infimum, witnesses


def _point_report(
    spec: DistributionSpec, proc: IntervalProcedure, theta: float, mode: BoundsMode, quantity: Quantity
) -> CoverageReport:
    value = coverage_at(spec, proc, theta, mode)
    evaluation = Evaluation(theta=theta, quantity=quantity, value=value)
    return CoverageReport(
        spec=spec,
        procedure=proc.name,
        bounds_mode=mode,
        a=theta,
        b=theta,
        infimum=value,
        attained=True,
        witnesses=[evaluation],
        evaluations=[evaluation],
    )


def _maybe_check_unimodality(
    spec: DistributionSpec, proc: IntervalProcedure, cset: CriticalSet, mode: BoundsMode
) -> bool | None:
    """Sample each gap for unimodality when no proof covers the family (non-integer negative binomial r)."""
    if spec.family is not Family.NEG_BINOMIAL or float(spec.r).is_integer():  # type: ignore[arg-type]
        return None
    from src.oracle.unimodal import check_unimodal_between

    samples = int(config_setting("engine", "unimodality_samples"))
    for lo, hi in cset.gaps():
        thetas = np.linspace(lo, hi, samples + 2)[1:-1]
        values = [coverage_at(spec, proc, float(t), mode) for t in thetas]
        if not check_unimodal_between(values, UNIMODAL_TOL):
            logger.warning("unimodality_check_failed", procedure=proc.name, r=spec.r, gap=(lo, hi), mode=mode.value)
            return False
    return True
