"""Interval procedures, built-in constructions and event-to-k-interval searches."""

from src.procedures import builtin as _builtin  # noqa: F401  (registers built-ins)
from src.procedures.base import BoundsMode, Direction, IntervalProcedure, KIndexInterval, from_rule, from_table
from src.procedures.builtin import clopper_pearson, garwood_poisson, wilson_score
from src.procedures.registry import MethodRegistry, method_registry
from src.procedures.search import k_interval_for, predicate_range, values_strictly_between
from src.procedures.table_io import parse_table, write_table

__all__ = [
    "BoundsMode",
    "Direction",
    "IntervalProcedure",
    "KIndexInterval",
    "MethodRegistry",
    "clopper_pearson",
    "from_rule",
    "from_table",
    "garwood_poisson",
    "k_interval_for",
    "method_registry",
    "parse_table",
    "predicate_range",
    "values_strictly_between",
    "wilson_score",
    "write_table",
]
