"""Optima counting, the four performance metrics and the two-sample Z-test."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import UnsupportedMetricError
from .functions import OptimaRegistry, Problem

Z_CRITICAL_05 = 1.959964


@dataclass
class RunRecord:
    """Outcome of one optimizer run."""

    algorithm: str
    problem: str
    seed: int
    positions: np.ndarray
    fitness: np.ndarray
    matched_optima: int
    best_fitness: float
    evaluations_used: int
    trace: np.ndarray = field(default_factory=lambda: np.empty((0, 2)))

    @property
    def solution_count(self) -> int:
        return int(self.fitness.size)


@dataclass(frozen=True)
class ComparisonVerdict:
    symbol: str
    z_statistic: float
    mean_a: float
    std_a: float
    mean_b: float
    std_b: float


def default_niche_radius(problem: Problem, fraction: float = 0.01) -> float:
    """``fraction`` of the smallest box width, shrunk below half the optima spacing."""
    radius = fraction * float(problem.bounds.width.min())
    separation = problem.registry.min_separation()
    if np.isfinite(separation) and separation <= 2 * radius:
        radius = 0.5 * separation * (1 - 1e-6)
    return radius


def count_matched_optima(
    positions,
    fitness,
    registry: OptimaRegistry,
    epsilon_f: float,
    niche_radius: float,
) -> int:
    """Number of distinct known optima claimed by the given solutions.

    A solution can claim an optimum when its fitness is below
    ``minimum_value + epsilon_f`` and it lies within ``niche_radius`` of it.
    Each solution claims at most one optimum; the returned count is the size
    of a maximum matching. Positions must be in the registry's (unshifted,
    unrotated) frame.

    Registries too large to enumerate fall back to decoding each solution to
    its nearest optimum, which gives the same count whenever the radius is
    below half the optima spacing.
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    fitness = np.asarray(fitness, dtype=float).ravel()
    if fitness.size == 0:
        return 0
    ok = fitness - registry.minimum_value < epsilon_f
    if not ok.any():
        return 0
    pts = positions[ok]
    if registry.enumerable:
        reps = registry.representatives
        dist = np.sqrt(np.sum((pts[:, None, :] - reps[None, :, :]) ** 2, axis=2))
        edges = csr_matrix(dist <= niche_radius)
        if edges.nnz == 0:
            return 0
        match = maximum_bipartite_matching(edges, perm_type="column")
        return int(np.count_nonzero(match >= 0))
    if not registry.block_optima:
        raise UnsupportedMetricError("registry has neither representatives nor block data")
    ids, dist = registry.decode(pts)
    hits = {tuple(row) for row, d in zip(ids, dist) if d <= niche_radius}
    return len(hits)


def count_for_problem(problem: Problem, positions, fitness, niche_radius: float | None = None,
                      epsilon_f: float | None = None) -> int:
    radius = default_niche_radius(problem) if niche_radius is None else niche_radius
    eps = problem.epsilon_f if epsilon_f is None else epsilon_f
    if len(fitness) == 0:
        return 0
    return count_matched_optima(problem.to_base_frame(positions), fitness, problem.registry,
                                eps, radius)


def success_rate(records: Sequence[RunRecord], registry_count: int) -> float:
    """Fraction of runs that found every known optimum."""
    if not records:
        raise ValueError("success_rate needs at least one record")
    return sum(r.matched_optima == registry_count for r in records) / len(records)


def mean_std(values) -> tuple[float, float]:
    """Mean and standard deviation with divisor N."""
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std())


def anof(records: Sequence[RunRecord]) -> tuple[float, float]:
    """Average number of optima found, with its (divisor N) spread."""
    if not records:
        raise ValueError("anof needs at least one record")
    return mean_std([r.matched_optima for r in records])


def quality_stats(records: Sequence[RunRecord]) -> tuple[float, float] | None:
    """Mean and spread of every stored solution's fitness, pooled over runs.

    Returns ``None`` when no run stored a solution.
    """
    pooled = [r.fitness for r in records if r.fitness.size]
    if not pooled:
        return None
    return mean_std(np.concatenate(pooled))


def z_test(sample_a, sample_b, higher_is_better: bool = True,
           critical: float = Z_CRITICAL_05) -> ComparisonVerdict:
    """Two independent-samples Z-test of ``a`` against ``b``.

    ``+`` means ``a`` is significantly better, ``-`` significantly worse and
    ``=`` no significant difference. Both samples need at least 30 values
    for the normal approximation; a ValueError is raised otherwise.
    """
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    if a.size < 30 or b.size < 30:
        raise ValueError("the Z-test needs at least 30 observations per sample")
    mean_a, std_a = mean_std(a)
    mean_b, std_b = mean_std(b)
    se = math.sqrt(std_a**2 / a.size + std_b**2 / b.size)
    diff = mean_a - mean_b
    if se == 0.0:
        z = 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
    else:
        z = diff / se
    if abs(z) <= critical:
        symbol = "="
    else:
        a_better = (z > 0) == higher_is_better
        symbol = "+" if a_better else "-"
    return ComparisonVerdict(symbol, z, mean_a, std_a, mean_b, std_b)
