"""Critical sets and exact worst-case coverage."""

from src.coverage.critical_set import (
    CriticalPoint,
    CriticalSet,
    Provenance,
    ProvenanceKind,
    breakpoints_continuous,
    breakpoints_hypergeom,
    gap_violations,
)
from src.coverage.engine import (
    check_compatible,
    coverage_at,
    coverage_at_exact,
    coverage_curve,
    inf_closed_coverage,
    min_hypergeom_coverage,
    min_open_coverage,
)
from src.coverage.report import CoverageReport, Evaluation, Quantity

__all__ = [
    "CoverageReport",
    "CriticalPoint",
    "CriticalSet",
    "Evaluation",
    "Provenance",
    "ProvenanceKind",
    "Quantity",
    "breakpoints_continuous",
    "breakpoints_hypergeom",
    "check_compatible",
    "coverage_at",
    "coverage_at_exact",
    "coverage_curve",
    "gap_violations",
    "inf_closed_coverage",
    "min_hypergeom_coverage",
    "min_open_coverage",
]
