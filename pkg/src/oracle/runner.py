"""Seeded engine-versus-oracle verification run behind ``verify``."""

from __future__ import annotations

from typing import Any

import numpy as np

from src.coverage.engine import inf_closed_coverage, min_hypergeom_coverage, min_open_coverage
from src.distributions.base import DistributionSpec, Family
from src.oracle.appendix_b import check_appendix_b
from src.oracle.generators import GeneratedCase, random_case
from src.oracle.grid import grid_coverage, grid_min
from src.oracle.hypergeom import exhaustive_min_hypergeom, hypergeom_scan
from src.oracle.unimodal import check_unimodal_between
from src.oracle.verdict import OracleVerdict, VerdictBuilder
from src.procedures.base import BoundsMode
from src.procedures.builtin import clopper_pearson
from src.procedures.search import k_interval_for
from src.utils.config import load_config
from src.utils.errors import DomainError
from src.utils.logging import get_logger

logger = get_logger(__name__)

CONTINUOUS_FAMILIES = (Family.BINOMIAL, Family.POISSON, Family.NEG_BINOMIAL)
HYPERGEOM_POPULATIONS = (5, 10, 25, 60)
OPEN_TOL = 1e-10
CLOSED_TOL = 1e-7
BELOW_TOL = 1e-12
UNIMODAL_TOL = 1e-12
CP_LEVEL = 0.95
CP_TOL = 1e-9


class _Suite:
    def __init__(self, grid_points: int, samples: int) -> None:
        self.grid_points = grid_points
        self.samples = samples
        self.open = VerdictBuilder("open-reduction")
        self.closed = VerdictBuilder("closed-infimum")
        self.hypergeom = VerdictBuilder("hypergeometric-reduction")
        self.unimodal = VerdictBuilder("unimodality")
        self.limits = VerdictBuilder("one-sided-limit")
        self.cp = VerdictBuilder("clopper-pearson")

    def continuous(self, case: GeneratedCase, label: str) -> None:
        spec, proc, a, b = case.spec, case.proc, case.a, case.b
        report = min_open_coverage(spec, proc, a, b)
        _, grid_value = grid_min(spec, proc, a, b, BoundsMode.OPEN_OPEN, self.grid_points)
        diff = report.infimum - grid_value
        if diff > BELOW_TOL or abs(diff) > OPEN_TOL:
            self.open.fail(f"{label}: {case.describe()}", grid_value, report.infimum, diff)
        else:
            self.open.observe(diff)

        closed = inf_closed_coverage(spec, proc, a, b)
        _, grid_value = grid_min(spec, proc, a, b, BoundsMode.CLOSED_CLOSED, self.grid_points)
        diff = closed.infimum - grid_value
        if diff > BELOW_TOL or abs(diff) > CLOSED_TOL:
            self.closed.fail(f"{label}: {case.describe()}", grid_value, closed.infimum, diff)
        else:
            self.closed.observe(diff)

        gaps = report.critical_set.gaps() if report.critical_set is not None else []
        if not gaps:
            return
        inner = [np.linspace(lo, hi, self.samples + 2)[1:-1] for lo, hi in gaps]
        values = grid_coverage(spec, proc, np.concatenate(inner), BoundsMode.OPEN_OPEN)
        for g, (lo, hi) in enumerate(gaps):
            chunk = values[g * self.samples : (g + 1) * self.samples].tolist()
            self._unimodal(chunk, UNIMODAL_TOL, f"{label}: gap ({lo!r}, {hi!r}) of {case.describe()}")
            mid = 0.5 * (lo + hi)
            inside = k_interval_for(proc, mid, BoundsMode.CLOSED_CLOSED)
            right_of_lo = k_interval_for(proc, lo, BoundsMode.CLOSED_OPEN)
            if inside != right_of_lo:
                self.limits.fail(f"{label}: theta={mid!r} in ({lo!r}, {hi!r})", right_of_lo, inside, 0.0)
            else:
                self.limits.observe(0.0)

    def hypergeometric(self, case: GeneratedCase, label: str) -> None:
        spec, proc, a, b = case.spec, case.proc, int(case.a), int(case.b)
        for mode in (BoundsMode.OPEN_OPEN, BoundsMode.CLOSED_CLOSED):
            report = min_hypergeom_coverage(spec, proc, a, b, mode, exact=True)
            _, value = exhaustive_min_hypergeom(spec, proc, a, b, mode, exact=True)
            diff = report.infimum_exact - value  # type: ignore[operator]
            if diff != 0:
                self.hypergeom.fail(f"{label} [{mode.value}]: {case.describe()}", value, report.infimum_exact, diff)
            else:
                self.hypergeom.observe(0)
            if mode is BoundsMode.OPEN_OPEN and report.critical_set is not None:
                scan = dict(hypergeom_scan(spec, proc, a, b, mode, exact=True))
                for lo, hi in report.critical_set.gaps():
                    run = [scan[M] for M in range(int(lo), int(hi) + 1)]
                    self._unimodal(run, 0, f"{label}: M in [{int(lo)}, {int(hi)}] of {case.describe()}")

    def clopper_pearson(self) -> None:
        a, b = 1e-6, 1.0 - 1e-6
        for n in (5, 10, 25):
            spec = DistributionSpec.binomial(n)
            proc = clopper_pearson(n, 1.0 - CP_LEVEL)
            report = inf_closed_coverage(spec, proc, a, b)
            _, grid_value = grid_min(spec, proc, a, b, BoundsMode.CLOSED_CLOSED, self.grid_points)
            label = f"clopper-pearson n={n}"
            if report.infimum < CP_LEVEL - CP_TOL:
                self.cp.fail(f"{label}: infimum below level", f">= {CP_LEVEL}", report.infimum, CP_LEVEL - report.infimum)
            elif abs(report.infimum - grid_value) > CLOSED_TOL:
                self.cp.fail(f"{label}: grid disagrees", grid_value, report.infimum, report.infimum - grid_value)
            else:
                self.cp.observe(report.infimum - grid_value)

    def _unimodal(self, values: list, tol: float, description: str) -> None:
        if len(values) < 2:
            return
        if check_unimodal_between(values, tol):
            self.unimodal.observe(0.0)
        else:
            self.unimodal.fail(description, "unimodal", "not unimodal", 0.0)

    def finish(self) -> list[OracleVerdict]:
        return [b.finish() for b in (self.open, self.closed, self.hypergeom, self.unimodal, self.limits, self.cp)]


def run_verification(seed: int, cases: int, config: dict[str, Any] | None = None) -> list[OracleVerdict]:
    """
    Run ``cases`` random procedures per family against the oracles, then the exact identity ladder.

    The same seed always yields the same cases in the same order.
    """
    if cases < 1:
        raise DomainError(f"cases must be >= 1, got {cases}")
    config = config or load_config()
    vcfg = config["verify"]
    rng = np.random.default_rng(seed)
    suite = _Suite(int(vcfg["grid_points"]), int(vcfg["unimodal_samples"]))
    for family in CONTINUOUS_FAMILIES:
        for i in range(cases):
            suite.continuous(random_case(family, rng), f"{family.value}#{i}")
    for i in range(cases):
        N = HYPERGEOM_POPULATIONS[i % len(HYPERGEOM_POPULATIONS)]
        suite.hypergeometric(random_case(Family.HYPERGEOMETRIC, rng, N=N), f"hypergeometric#{i}")
    suite.clopper_pearson()
    verdicts = suite.finish()
    for N, n in vcfg["appendix_b_ladder"]:
        verdicts.append(check_appendix_b(int(N), int(n)))
    logger.info("verification_done", seed=seed, cases=cases, failed=sum(not v.passed for v in verdicts))
    return verdicts
