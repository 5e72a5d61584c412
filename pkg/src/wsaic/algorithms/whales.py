"""Whale swarm optimizers: WSA-IC and the original WSA.

Whales are processed in index order against the live swarm, so a whale that
improves early in an iteration can already guide the whales after it. The
inner loops run in compiled kernels. The archive never influences movement,
so WSA-IC buffers its archive offers in the kernel and replays them in
order afterwards.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ..core import Bounds, Swarm, Whale, better_nearest_kernel
from ..functions import Problem
from ..functions.bases import evaluate_kernel
from .archive import Archive
from .params import WsaIcParams, WsaParams

_DONE, _FLUSH, _STOP = 0, 1, 2
_JUDGE_BUFFER = 4096


@njit(cache=True)
def move_kernel(x, y, rho0, eta, lower, upper, rng, out):
    n = x.size
    if eta == 0.0:
        high = rho0
    else:
        d2 = 0.0
        for k in range(n):
            d2 += (y[k] - x[k]) ** 2
        high = rho0 * math.exp(-eta * math.sqrt(d2))
    for k in range(n):
        v = x[k] + rng.uniform(0.0, high) * (y[k] - x[k])
        if v < lower[k]:
            v = lower[k]
        elif v > upper[k]:
            v = upper[k]
        out[k] = v
    return out


def wsa_move(x, y, rho0: float, eta: float, rng: np.random.Generator,
             bounds: Bounds | None = None) -> np.ndarray:
    """Move ``x`` toward guide ``y``.

    Each coordinate gets its own factor drawn from
    ``U[0, rho0 * exp(-eta * |x - y|))``; the result is clamped to ``bounds``.
    """
    x = np.ascontiguousarray(x, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("x and y differ in dimension")
    if bounds is None:
        lower = np.full(x.size, -np.inf)
        upper = np.full(x.size, np.inf)
    else:
        lower, upper = bounds.lower, bounds.upper
    return move_kernel(x, y, float(rho0), float(eta), lower, upper, rng, np.empty_like(x))


def check_counter(whale: Whale, archive: Archive, params: WsaIcParams, problem: Problem,
                  rng: np.random.Generator) -> tuple[Whale, int]:
    """Counter check for a whale that did not improve this iteration.

    Below the stability threshold the counter is incremented. At the
    threshold the whale is judged against the archive and redrawn uniformly
    in the bounds. Returns the whale and the evaluations spent (0 or 1).
    """
    if whale.counter < params.stability_threshold:
        return Whale(whale.position, whale.fitness, whale.counter + 1), 0
    archive.judge(whale.position, whale.fitness)
    position = problem.bounds.sample(rng)
    return Whale(position, problem.evaluate(position), 0), 1


@njit(cache=True)
def _wsa_ic_kernel(pos, fit, cnt, marks, start, max_iters, eval_target, rho0, eta, ts,
                   budget, evals, kargs, rng, cand, work, stats, jpos, jfit):
    # stats: moves, reinits, buffered judgments, completed iterations
    lower = kargs[1]
    upper = kargs[2]
    p, n = pos.shape
    cap = jfit.shape[0]
    fmin = fit.min()
    i = start
    iters = 0
    while True:
        while i < p:
            # a whale has a guide exactly when it is worse than the swarm minimum
            if fit[i] > fmin:
                if evals >= budget:
                    return i, evals, _STOP
                g = better_nearest_kernel(pos, fit, i)
                move_kernel(pos[i], pos[g], rho0, eta, lower, upper, rng, cand)
                fc = evaluate_kernel(cand, kargs, work)
                evals += 1
                stats[0] += 1
                if fc < fit[i]:
                    pos[i, :] = cand
                    fit[i] = fc
                    cnt[i] = 0
                    if fc < fmin:
                        fmin = fc
                    i += 1
                    continue
            if cnt[i] < ts:
                cnt[i] += 1
            else:
                k = stats[2]
                jpos[k, :] = pos[i]
                jfit[k] = fit[i]
                stats[2] = k + 1
                if evals >= budget:
                    return i + 1, evals, _STOP
                for d in range(n):
                    pos[i, d] = rng.uniform(lower[d], upper[d])
                fit[i] = evaluate_kernel(pos[i], kargs, work)
                evals += 1
                cnt[i] = 0
                marks[i] += 1
                stats[1] += 1
                fmin = fit.min()
                if stats[2] == cap:
                    i += 1
                    if i == p:
                        i = 0
                        stats[3] += 1
                    return i, evals, _FLUSH
            i += 1
        i = 0
        iters += 1
        stats[3] += 1
        if iters >= max_iters or evals >= eval_target:
            return 0, evals, _DONE


@njit(cache=True)
def _wsa_kernel(pos, fit, rho0, eta, budget, evals, max_iters, eval_target, kargs, rng,
                cand, work):
    # returns evals, completed iterations, stopped
    lower = kargs[1]
    upper = kargs[2]
    iters = 0
    while iters < max_iters and evals < eval_target:
        moved = 0
        for i in range(pos.shape[0]):
            g = better_nearest_kernel(pos, fit, i)
            if g < 0:
                continue
            if evals >= budget:
                return evals, iters, True
            move_kernel(pos[i], pos[g], rho0, eta, lower, upper, rng, cand)
            fit[i] = evaluate_kernel(cand, kargs, work)
            pos[i, :] = cand
            evals += 1
            moved += 1
        iters += 1
        if moved == 0:
            return evals, iters, True
    return evals, iters, False


class _WhaleOptimizer:
    def __init__(self, problem: Problem, params, rng: np.random.Generator):
        self.problem = problem
        self.params = params.resolve(problem)
        self.rng = rng
        p = self.params.population
        positions = problem.bounds.sample(rng, p)
        self.swarm = Swarm(positions, problem.evaluate_many(positions))
        self.evaluations = p
        self.best_fitness = float(self.swarm.fitness.min())
        self._stopped = False
        self._cand = np.empty(problem.dimension)
        self._work = np.empty(problem.dimension)

    @property
    def exhausted(self) -> bool:
        return self._stopped or self.evaluations >= self.params.budget


class WsaIc(_WhaleOptimizer):
    """Whale swarm algorithm with iterative counter.

    A whale's moved copy replaces it only when strictly better. A whale that
    has not improved for more than ``stability_threshold`` consecutive
    iterations is offered to the archive and reinitialized at random.
    """

    name = "wsa-ic"

    def __init__(self, problem: Problem, params: WsaIcParams, rng: np.random.Generator):
        super().__init__(problem, params, rng)
        prm = self.params
        self.archive = Archive(problem.dimension, prm.fitness_threshold, prm.dedup_radius)
        self.reinit_marks = np.zeros(prm.population, dtype=np.int64)
        self.iterations = 0
        self._stats = np.zeros(4, dtype=np.int64)
        self._jpos = np.empty((_JUDGE_BUFFER, problem.dimension))
        self._jfit = np.empty(_JUDGE_BUFFER)

    @property
    def moves(self) -> int:
        return int(self._stats[0])

    @property
    def reinits(self) -> int:
        return int(self._stats[1])

    def _drive(self, max_iters: int, eval_target: float) -> None:
        prm = self.params
        sw = self.swarm
        start = 0
        while True:
            done_before = int(self._stats[3])
            i, evals, status = _wsa_ic_kernel(
                sw.positions, sw.fitness, sw.counters, self.reinit_marks, start, max_iters,
                eval_target, prm.rho0, prm.eta, prm.stability_threshold, prm.budget,
                self.evaluations, self.problem.kernel_args, self.rng, self._cand, self._work,
                self._stats, self._jpos, self._jfit)
            self.evaluations = evals
            self._flush()
            if status == _STOP:
                self._stopped = True
                break
            if status == _DONE:
                break
            max_iters -= int(self._stats[3]) - done_before
            # only stop at an iteration boundary
            if i == 0 and (max_iters <= 0 or evals >= eval_target):
                break
            start = i
        self.iterations = int(self._stats[3])
        self.best_fitness = min(self.best_fitness, self.archive.f_gbest, float(sw.fitness.min()))

    def _flush(self) -> None:
        k = int(self._stats[2])
        if k:
            self.best_fitness = min(self.best_fitness, float(self._jfit[:k].min()))
            self.archive.judge_many(self._jpos[:k], self._jfit[:k])
            self._stats[2] = 0

    def iterate(self) -> None:
        """One pass over the swarm in index order."""
        if not self.exhausted:
            self._drive(1, math.inf)

    def advance(self, eval_target: int) -> None:
        """Iterate until at least ``eval_target`` evaluations are used or the run ends."""
        if not self.exhausted:
            self._drive(2**62, eval_target)

    def finish(self) -> None:
        """Offer every whale of the last generation to the archive."""
        sw = self.swarm
        for i in range(len(sw)):
            self.archive.judge(sw.positions[i], sw.fitness[i])
        self.best_fitness = min(self.best_fitness, self.archive.f_gbest)

    def solutions(self) -> tuple[np.ndarray, np.ndarray]:
        return self.archive.positions.copy(), self.archive.fitness.copy()


class Wsa(_WhaleOptimizer):
    """Original WSA: every whale with a guide moves, better or not.

    The run also ends when no whale has a guide, since no further
    evaluations can happen.
    """

    name = "wsa"

    def __init__(self, problem: Problem, params: WsaParams, rng: np.random.Generator):
        super().__init__(problem, params, rng)
        self.iterations = 0

    def _drive(self, max_iters: int, eval_target: float) -> None:
        prm = self.params
        sw = self.swarm
        evals, iters, stopped = _wsa_kernel(
            sw.positions, sw.fitness, prm.rho0, prm.eta, prm.budget, self.evaluations,
            max_iters, eval_target, self.problem.kernel_args, self.rng, self._cand, self._work)
        self.evaluations = evals
        self.iterations += iters
        self._stopped = self._stopped or stopped
        self.best_fitness = min(self.best_fitness, float(sw.fitness.min()))

    def iterate(self) -> None:
        if not self.exhausted:
            self._drive(1, math.inf)

    def advance(self, eval_target: int) -> None:
        if not self.exhausted:
            self._drive(2**62, eval_target)

    def finish(self) -> None:
        pass

    def solutions(self) -> tuple[np.ndarray, np.ndarray]:
        return self.swarm.positions.copy(), self.swarm.fitness.copy()
