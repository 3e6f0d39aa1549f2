"""Exception types raised by the coverage library."""

from __future__ import annotations


class CoverageError(Exception):
    """Base class for all library errors."""


class DomainError(CoverageError, ValueError):
    """Invalid distribution spec, parameter value or range."""


class ProcedureError(CoverageError, ValueError):
    """Invalid interval procedure: shape, ordering or monotonicity."""


class CertificationError(CoverageError):
    """An unbounded-support search could not be certified complete."""
