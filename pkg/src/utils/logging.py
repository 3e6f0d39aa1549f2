"""Structured logging setup with structlog.

Reports and CSV rows own stdout, so every log line is written to stderr.
"""

from __future__ import annotations

import logging
import sys
from typing import Any, TextIO

import structlog


def setup_logging(level: str = "WARNING", json_logs: bool = False, stream: TextIO | None = None) -> None:
    """
    Configure structlog for the coverage library and CLI.

    Args:
        level: Log level name; unknown names fall back to WARNING.
        json_logs: Emit one JSON object per event instead of console lines.
        stream: Destination, stderr when omitted. The stream is looked up at
            call time so pytest's captured stderr is honoured.

    Example:
        >>> setup_logging(level="DEBUG", json_logs=True)
    """
    numeric_level = getattr(logging, level.upper(), logging.WARNING)
    out = stream or sys.stderr
    logging.basicConfig(format="%(message)s", stream=out, level=numeric_level)
    processors: list[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.TimeStamper(fmt="iso"),
    ]
    if json_logs:
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=out.isatty()))
    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=out),
        cache_logger_on_first_use=False,
    )


def bind_run_context(**context: Any) -> None:
    """Replace the per-run context (command, seed, ...) merged into every event."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**context)


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Return a bound logger for the given module name."""
    return structlog.get_logger(name)
