"""Configuration loading from YAML and environment."""

from __future__ import annotations

import copy
import os
from pathlib import Path
from typing import Any

import yaml


def load_config(config_path: str | Path | None = None) -> dict[str, Any]:
    """
    Load coverage config from YAML file with optional env var overrides.

    Missing sections fall back to the defaults, so callers can always index
    ``config["numerics"]`` and friends.

    Args:
        config_path: Path to coverage_config.yaml. Defaults to config/coverage_config.yaml.

    Returns:
        Nested config dict.

    Example:
        >>> cfg = load_config()
        >>> cfg["oracle"]["neighbour_offset"]
        1e-09
    """
    path = get_config_path(config_path)
    config = _default_config()
    if path.exists():
        with open(path, encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
        for section, values in loaded.items():
            if isinstance(values, dict):
                config.setdefault(section, {}).update(values)
            else:
                config[section] = values
    # Env overrides
    if level := os.getenv("COVERAGE_LOG_LEVEL"):
        config["logging"]["level"] = level
    if grid := os.getenv("COVERAGE_GRID_POINTS"):
        config["oracle"]["grid_points"] = int(grid)
    return config


def get_config_path(config_path: str | Path | None = None) -> Path:
    """Return the path to the config file used for load."""
    if config_path is None:
        config_path = Path(__file__).resolve().parent.parent.parent / "config" / "coverage_config.yaml"
    return Path(config_path)


def config_setting(section: str, name: str) -> Any:
    """
    Look up one value from the default config, read from disk once per process.

    Example:
        >>> config_setting("oracle", "exact_population_limit")
        300
    """
    return _cached_config()[section][name]


def numerics_setting(name: str) -> Any:
    """Look up a single ``numerics`` value from the default config file."""
    return config_setting("numerics", name)


_CACHE: dict[str, Any] | None = None


def _cached_config() -> dict[str, Any]:
    global _CACHE
    if _CACHE is None:
        _CACHE = load_config()
    return _CACHE


def _default_config() -> dict[str, Any]:
    """Default config when no file is present."""
    return copy.deepcopy(
        {
            "numerics": {
                "bisection_xtol": 1e-12,
                "window_sigmas": 40.0,
                "max_direct_terms": 200_000,
                "bracket_limit": 2**40,
                "monotone_check_upto": 200,
            },
            "engine": {"unimodality_samples": 32},
            "oracle": {
                "grid_points": 20001,
                "neighbour_offset": 1e-9,
                "exact_population_limit": 300,
            },
            "verify": {
                "grid_points": 2001,
                "unimodal_samples": 50,
                "appendix_b_ladder": [[4, 2], [10, 3], [20, 6]],
            },
            "logging": {"level": "WARNING", "json": False},
        }
    )
