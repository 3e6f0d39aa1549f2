"""Brute-force oracles: dense grids, exhaustive scans and exact identity suites."""

from src.oracle.appendix_b import check_appendix_b
from src.oracle.grid import grid_coverage, grid_min
from src.oracle.hypergeom import exhaustive_min_hypergeom, hypergeom_scan
from src.oracle.runner import run_verification
from src.oracle.unimodal import check_unimodal_between
from src.oracle.verdict import FailingCase, OracleVerdict

__all__ = [
    "FailingCase",
    "OracleVerdict",
    "check_appendix_b",
    "check_unimodal_between",
    "exhaustive_min_hypergeom",
    "grid_coverage",
    "grid_min",
    "hypergeom_scan",
    "run_verification",
]
