"""Shared types, bounds handling, seeded randomness and neighbor search."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numba import njit

__all__ = [
    "Bounds",
    "ConfigurationError",
    "Swarm",
    "UnsupportedMetricError",
    "Whale",
    "clamp_to_bounds",
    "euclidean_distance",
    "find_better_nearest",
    "make_rng",
]


class ConfigurationError(ValueError):
    """Invalid problem, optimizer or experiment configuration."""


class UnsupportedMetricError(ValueError):
    """A metric cannot be computed for the given registry."""


@dataclass(frozen=True)
class Bounds:
    """Box constraints ``lower[k] <= x[k] <= upper[k]``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).ravel()
        upper = np.array(self.upper, dtype=float).ravel()
        if lower.shape != upper.shape:
            raise ConfigurationError("lower and upper bounds differ in length")
        if lower.size == 0:
            raise ConfigurationError("bounds must have at least one coordinate")
        if not np.all(lower < upper):
            raise ConfigurationError("every lower bound must be below its upper bound")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, dim: int, low: float = -100.0, high: float = 100.0) -> Bounds:
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def diagonal(self) -> float:
        """Length of the box diagonal."""
        return float(np.sqrt(np.sum(self.width**2)))

    def sample(self, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
        """Uniform draw(s) inside the box."""
        shape = (self.dim,) if size is None else (size, self.dim)
        return rng.uniform(self.lower, self.upper, size=shape)

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass
class Whale:
    """A candidate solution with its cached fitness and iterative counter."""

    position: np.ndarray
    fitness: float
    counter: int = 0


@dataclass
class Swarm:
    """Structure-of-arrays storage for a population of whales.

    Row ``i`` of ``positions`` together with ``fitness[i]`` and
    ``counters[i]`` is whale ``i``.
    """

    positions: np.ndarray
    fitness: np.ndarray
    counters: np.ndarray = field(default=None)

    def __post_init__(self):
        self.positions = np.ascontiguousarray(self.positions, dtype=float)
        self.fitness = np.ascontiguousarray(self.fitness, dtype=float)
        if self.positions.ndim != 2 or self.positions.shape[0] != self.fitness.size:
            raise ConfigurationError("positions must be (p, n) with one fitness per row")
        if self.counters is None:
            self.counters = np.zeros(self.fitness.size, dtype=np.int64)
        else:
            self.counters = np.ascontiguousarray(self.counters, dtype=np.int64)

    @classmethod
    def from_whales(cls, whales: Sequence[Whale]) -> Swarm:
        if len(whales) == 0:
            raise ConfigurationError("empty swarm")
        return cls(
            np.array([w.position for w in whales], dtype=float),
            np.array([w.fitness for w in whales], dtype=float),
            np.array([w.counter for w in whales], dtype=np.int64),
        )

    def __len__(self) -> int:
        return self.fitness.size

    def __getitem__(self, i: int) -> Whale:
        return Whale(self.positions[i].copy(), float(self.fitness[i]), int(self.counters[i]))

    def copy(self) -> Swarm:
        return Swarm(self.positions.copy(), self.fitness.copy(), self.counters.copy())


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for one run; the same ``(seed, stream)`` replays the same draws.

    ``stream`` separates consumers that share a seed, such as two algorithms
    run with the same run seed.
    """
    entropy = int(seed) & 0xFFFFFFFFFFFFFFFF
    if stream == 0:
        return np.random.default_rng(np.uint64(entropy))
    return np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(int(stream),)))


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def clamp_to_bounds(p, bounds: Bounds) -> np.ndarray:
    """Project ``p`` coordinate-wise onto the box."""
    return np.clip(np.asarray(p, dtype=float), bounds.lower, bounds.upper)


@njit(cache=True)
def better_nearest_kernel(positions, fitness, i):
    """Index of the nearest strictly better row, or -1.

    Distance ties go to the lowest index (strict ``<`` while scanning upward).
    """
    p, n = positions.shape
    fi = fitness[i]
    best = -1
    best_d2 = np.inf
    for j in range(p):
        if j == i or not fitness[j] < fi:
            continue
        d2 = 0.0
        for k in range(n):
            diff = positions[j, k] - positions[i, k]
            d2 += diff * diff
        if d2 < best_d2:
            best_d2 = d2
            best = j
    return best


def find_better_nearest(swarm: Swarm | Sequence[Whale], i: int) -> int | None:
    """Guide of whale ``i``: the closest whale with strictly smaller fitness.

    Returns ``None`` when whale ``i`` is (one of) the best in the swarm.
    """
    if not isinstance(swarm, Swarm):
        swarm = Swarm.from_whales(swarm)
    if len(swarm) == 0:
        raise ConfigurationError("empty swarm")
    if not 0 <= i < len(swarm):
        raise IndexError(f"whale index {i} out of range for swarm of {len(swarm)}")
    j = better_nearest_kernel(swarm.positions, swarm.fitness, i)
    return None if j < 0 else int(j)
