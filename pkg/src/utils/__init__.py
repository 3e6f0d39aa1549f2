"""Shared utilities."""

from src.utils.config import load_config
from src.utils.errors import CertificationError, CoverageError, DomainError, ProcedureError
from src.utils.logging import bind_run_context, get_logger, setup_logging

__all__ = [
    "CertificationError",
    "CoverageError",
    "DomainError",
    "ProcedureError",
    "bind_run_context",
    "get_logger",
    "load_config",
    "setup_logging",
]
