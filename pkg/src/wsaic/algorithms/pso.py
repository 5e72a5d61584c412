"""Particle swarm baselines: FERPSO and LIPS, adapted to minimization.

Both keep personal bests, start from zero velocity and clamp positions to
the box. The final iteration is truncated to the remaining budget.
"""

from __future__ import annotations

import numpy as np

from ..functions import Problem
from .params import FerpsoParams, LipsParams


def _pairwise_distances(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=2))


def fer_neighbours(pbest: np.ndarray, pbest_fitness: np.ndarray, diagonal: float) -> np.ndarray:
    """Index of the neighbour maximizing the fitness-Euclidean ratio, per particle.

    ``FER(j, i) = alpha * (f_i - f_j) / |P_j - P_i|`` with
    ``alpha = diagonal / (f_worst - f_best)``. When all personal bests share
    one fitness, alpha is undefined and every particle follows the best.
    """
    f = np.asarray(pbest_fitness, dtype=float)
    p = f.size
    g = int(np.argmin(f))
    spread = float(f.max() - f.min())
    if spread <= 0.0 or not np.isfinite(spread):
        return np.full(p, g)
    alpha = diagonal / spread
    dist = _pairwise_distances(pbest)
    with np.errstate(divide="ignore", invalid="ignore"):
        fer = alpha * (f[:, None] - f[None, :]) / dist
    fer[(dist == 0.0)] = -np.inf
    nbr = np.argmax(fer, axis=1)
    stuck = ~np.isfinite(fer[np.arange(p), nbr])
    nbr[stuck] = g
    return nbr


class _ParticleSwarm:
    def __init__(self, problem: Problem, params, rng: np.random.Generator):
        self.problem = problem
        self.params = params.resolve(problem)
        self.rng = rng
        p = self.params.population
        self.x = problem.bounds.sample(rng, p)
        self.v = np.zeros_like(self.x)
        self.pbest = self.x.copy()
        self.pbest_fitness = problem.evaluate_many(self.x)
        self.evaluations = p
        self.best_fitness = float(self.pbest_fitness.min())

    @property
    def exhausted(self) -> bool:
        return self.evaluations >= self.params.budget

    def _commit(self, x_new: np.ndarray, v_new: np.ndarray) -> None:
        k = min(x_new.shape[0], self.params.budget - self.evaluations)
        if k <= 0:
            return
        lower, upper = self.problem.bounds.lower, self.problem.bounds.upper
        x_new = np.clip(x_new[:k], lower, upper)
        f = self.problem.evaluate_many(x_new)
        self.evaluations += k
        self.x[:k] = x_new
        self.v[:k] = v_new[:k]
        better = f < self.pbest_fitness[:k]
        idx = np.flatnonzero(better)
        self.pbest[idx] = x_new[idx]
        self.pbest_fitness[idx] = f[idx]
        self.best_fitness = min(self.best_fitness, float(self.pbest_fitness.min()))

    def advance(self, eval_target: int) -> None:
        while not self.exhausted and self.evaluations < eval_target:
            self.iterate()

    def finish(self) -> None:
        pass

    def solutions(self) -> tuple[np.ndarray, np.ndarray]:
        return self.pbest.copy(), self.pbest_fitness.copy()


class Ferpso(_ParticleSwarm):
    name = "ferpso"

    def iterate(self) -> None:
        if self.exhausted:
            return
        prm = self.params
        nbr = fer_neighbours(self.pbest, self.pbest_fitness, self.problem.bounds.diagonal)
        shape = self.x.shape
        r1 = self.rng.uniform(0.0, prm.phi_max / 2, shape)
        r2 = self.rng.uniform(0.0, prm.phi_max / 2, shape)
        v = prm.chi * (self.v + r1 * (self.pbest - self.x) + r2 * (self.pbest[nbr] - self.x))
        self._commit(self.x + v, v)


class Lips(_ParticleSwarm):
    name = "lips"

    def iterate(self) -> None:
        if self.exhausted:
            return
        prm = self.params
        nsize = prm.nsize(self.evaluations / prm.budget)
        dist = _pairwise_distances(self.pbest)
        np.fill_diagonal(dist, np.inf)
        nearest = np.argsort(dist, axis=1, kind="stable")[:, :nsize]
        p = self.x.shape[0]
        phi_j = self.rng.uniform(0.0, prm.phi_total / nsize, (p, nsize))
        phi = phi_j.sum(axis=1)
        weighted = np.einsum("ij,ijk->ik", phi_j, self.pbest[nearest])
        with np.errstate(divide="ignore", invalid="ignore"):
            attractor = np.where(phi[:, None] > 0, weighted / phi[:, None], self.pbest)
        v = prm.omega * (self.v + phi[:, None] * (attractor - self.x))
        self._commit(self.x + v, v)
