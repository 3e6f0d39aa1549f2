"""Aggregated pass/fail outcome of an oracle suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from pydantic import BaseModel, Field, computed_field

MAX_RECORDED_FAILURES = 50


class FailingCase(BaseModel):
    """One violated check: what was checked, the value it should have had, the value found."""

    description: str
    expected: str
    got: str


class OracleVerdict(BaseModel):
    """
    Result of one verification suite.

    ``passed`` is derived: a verdict passes exactly when no failing case was
    recorded. ``failure_count`` can exceed ``len(failing_cases)`` because only
    the first few failures are kept.
    """

    name: str
    worst_discrepancy: float = 0.0
    checked: int = 0
    failure_count: int = 0
    failing_cases: list[FailingCase] = Field(default_factory=list)
    skipped: list[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.failing_cases


@dataclass
class VerdictBuilder:
    """Mutable accumulator turned into an ``OracleVerdict`` by ``finish``."""

    name: str
    worst: float = 0.0
    checked: int = 0
    failures: list[FailingCase] = field(default_factory=list)
    failure_count: int = 0
    skipped: list[str] = field(default_factory=list)

    def observe(self, discrepancy: float | Fraction, count: int = 1) -> None:
        self.checked += count
        self.worst = max(self.worst, float(abs(discrepancy)))

    def fail(self, description: str, expected: object, got: object, discrepancy: float | Fraction) -> None:
        self.failure_count += 1
        self.worst = max(self.worst, float(abs(discrepancy)))
        if len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(FailingCase(description=description, expected=fmt_value(expected), got=fmt_value(got)))

    def skip(self, reason: str) -> None:
        self.skipped.append(reason)

    def finish(self) -> OracleVerdict:
        return OracleVerdict(
            name=self.name,
            worst_discrepancy=self.worst,
            checked=self.checked,
            failure_count=self.failure_count,
            failing_cases=list(self.failures),
            skipped=list(self.skipped),
        )


def fmt_value(value: object) -> str:
    """Stable rendering: floats with 17 significant digits, fractions as p/q."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)
