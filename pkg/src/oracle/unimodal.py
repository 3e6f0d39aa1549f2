"""Unimodality test for sampled sequences."""

from __future__ import annotations

from collections.abc import Sequence

from src.utils.errors import DomainError


def check_unimodal_between(values: Sequence[float], tol: float = 0.0) -> bool:
    """
    True iff ``values`` rises (within tol) up to some index and falls (within tol) after it.

    The longest non-decreasing prefix is always a valid split when any split is.

    Example:
        >>> check_unimodal_between([0, 1, 0.5])
        True
        >>> check_unimodal_between([0, 1, 0, 1])
        False
    """
    if len(values) < 2:
        raise DomainError(f"unimodality check needs at least 2 values, got {len(values)}")
    i = 0
    last = len(values) - 1
    while i < last and values[i + 1] >= values[i] - tol:
        i += 1
    while i < last:
        if values[i + 1] > values[i] + tol:
            return False
        i += 1
    return True
