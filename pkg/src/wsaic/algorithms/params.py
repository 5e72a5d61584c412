"""Parameter sets for the four optimizers."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from ..core import ConfigurationError
from ..functions import Problem


@dataclass(frozen=True)
class _Common:
    population: int = 50
    budget: int = 100_000

    def _check_common(self, minimum_population: int = 2):
        if self.population < minimum_population:
            raise ConfigurationError(
                f"population must be at least {minimum_population}, got {self.population}")
        if self.budget < self.population:
            raise ConfigurationError(
                f"budget {self.budget} cannot cover initialization of {self.population} agents")

    @classmethod
    def from_mapping(cls, mapping: dict):
        known = {f.name for f in fields(cls)}
        unknown = set(mapping) - known
        if unknown:
            raise ConfigurationError(
                f"unknown {cls.__name__} field(s): {', '.join(sorted(unknown))}")
        return cls(**mapping)


@dataclass(frozen=True)
class WsaIcParams(_Common):
    """WSA-IC settings. ``None`` entries are filled in by :meth:`resolve`:
    the stability threshold defaults to ``100 * n``, the fitness threshold
    to the problem's accuracy level, and the archive dedup radius to
    ``1e-4 * diagonal / sqrt(n)``.
    """

    rho0: float = 2.0
    eta: float = 0.0
    stability_threshold: int | None = None
    fitness_threshold: float | None = None
    dedup_radius: float | None = None

    def resolve(self, problem: Problem) -> WsaIcParams:
        n = problem.dimension
        out = replace(
            self,
            stability_threshold=(100 * n if self.stability_threshold is None
                                 else int(self.stability_threshold)),
            fitness_threshold=(problem.epsilon_f if self.fitness_threshold is None
                               else float(self.fitness_threshold)),
            dedup_radius=(1e-4 * problem.bounds.diagonal / math.sqrt(n)
                          if self.dedup_radius is None else float(self.dedup_radius)),
        )
        out._check_common()
        if out.rho0 <= 0 or out.eta < 0:
            raise ConfigurationError("rho0 must be positive and eta non-negative")
        if out.stability_threshold < 1:
            raise ConfigurationError("stability threshold must be a positive integer")
        if not out.fitness_threshold > 0:
            raise ConfigurationError("fitness threshold must be positive")
        if out.dedup_radius < 0:
            raise ConfigurationError("dedup radius must be non-negative")
        return out


@dataclass(frozen=True)
class WsaParams(_Common):
    """Original WSA: unconditional moves with distance attenuation ``eta``."""

    rho0: float = 2.0
    eta: float = 0.0

    def resolve(self, problem: Problem) -> WsaParams:
        self._check_common()
        if self.rho0 <= 0 or self.eta < 0:
            raise ConfigurationError("rho0 must be positive and eta non-negative")
        return self


@dataclass(frozen=True)
class FerpsoParams(_Common):
    chi: float = 0.729844
    phi_max: float = 4.1

    def resolve(self, problem: Problem) -> FerpsoParams:
        self._check_common()
        if self.chi <= 0 or self.phi_max <= 0:
            raise ConfigurationError("chi and phi_max must be positive")
        return self


@dataclass(frozen=True)
class LipsParams(_Common):
    omega: float = 0.729844
    nsize_min: int = 2
    nsize_max: int = 5
    phi_total: float = 4.1

    def resolve(self, problem: Problem) -> LipsParams:
        self._check_common(minimum_population=self.nsize_max + 1)
        if not 1 <= self.nsize_min <= self.nsize_max:
            raise ConfigurationError("need 1 <= nsize_min <= nsize_max")
        return self

    def nsize(self, fraction_used: float) -> int:
        """Neighborhood size, stepping linearly from min to max over the budget."""
        span = self.nsize_max - self.nsize_min + 1
        step = math.floor(span * min(max(fraction_used, 0.0), 1.0))
        return min(self.nsize_max, self.nsize_min + step)
