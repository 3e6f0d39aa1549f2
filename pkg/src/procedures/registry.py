"""Registry of built-in confidence procedures with decorator-based registration."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from src.distributions.base import DistributionSpec, Family
from src.procedures.base import IntervalProcedure
from src.utils.errors import DomainError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Builder = Callable[[DistributionSpec, float], IntervalProcedure]


@dataclass
class MethodDefinition:
    """Metadata and builder for a single built-in procedure."""

    name: str
    description: str
    family: Family
    builder: Builder


class MethodRegistry:
    """
    Registry for named interval procedures.

    Example:
        >>> registry = MethodRegistry()
        >>> @registry.register("trivial", "L=0, U=1", Family.BINOMIAL)
        ... def trivial(spec, delta):
        ...     return from_table([0.0] * (spec.n_samples + 1), [1.0] * (spec.n_samples + 1))
    """

    def __init__(self) -> None:
        self._methods: dict[str, MethodDefinition] = {}

    def register(self, name: str, description: str, family: Family) -> Callable[[Builder], Builder]:
        """Decorator to register a builder ``(spec, delta) -> IntervalProcedure``."""

        def decorator(fn: Builder) -> Builder:
            self._methods[name] = MethodDefinition(name=name, description=description, family=family, builder=fn)
            return fn

        return decorator

    def names(self) -> list[str]:
        return sorted(self._methods)

    def get(self, name: str) -> MethodDefinition:
        if name not in self._methods:
            raise DomainError(f"unknown method {name!r}; choose one of {', '.join(self.names())}")
        return self._methods[name]

    def build(self, name: str, spec: DistributionSpec, delta: float) -> IntervalProcedure:
        """Build the named procedure for ``spec`` at confidence parameter ``delta``."""
        defn = self.get(name)
        if defn.family is not spec.family:
            raise DomainError(f"method {name!r} is for {defn.family.value}, not {spec.family.value}")
        if not 0.0 < delta < 1.0:
            raise DomainError(f"delta={delta} outside (0, 1)")
        proc = defn.builder(spec, delta)
        logger.info("procedure_built", method=name, family=spec.family.value, n=spec.n_samples, delta=delta)
        return proc


# Global registry instance; built-ins register on import
method_registry = MethodRegistry()
