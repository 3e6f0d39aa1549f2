"""Command-line interface."""

from src.interfaces.cli import main, run_cli

__all__ = ["main", "run_cli"]
