from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _judge_batch(pos, fit, size, gbest, xs, fs, start, stop, tf, radius, stored):
    """Judge ``xs[start:stop]`` in order. Stops early when the buffers are full."""
    n = pos.shape[1]
    for j in range(start, stop):
        if size >= pos.shape[0]:
            return j, size
        f = fs[j]
        g = gbest[0]
        if f < g:
            if g - f > tf:
                size = 0
            gbest[0] = f
            w = 0
            for e in range(size):
                if fit[e] - f <= tf:
                    if w != e:
                        pos[w, :] = pos[e]
                        fit[w] = fit[e]
                    w += 1
            size = w
        elif not f - g <= tf:
            stored[j] = False
            continue
        blocked = False
        for e in range(size):
            d2 = 0.0
            for k in range(n):
                d2 += (pos[e, k] - xs[j, k]) ** 2
            if math.sqrt(d2) <= radius and fit[e] <= f:
                blocked = True
                break
        if blocked:
            stored[j] = False
            continue
        w = 0
        for e in range(size):
            d2 = 0.0
            for k in range(n):
                d2 += (pos[e, k] - xs[j, k]) ** 2
            if math.sqrt(d2) > radius:
                if w != e:
                    pos[w, :] = pos[e]
                    fit[w] = fit[e]
                w += 1
        pos[w, :] = xs[j]
        fit[w] = f
        size = w + 1
        stored[j] = True
    return stop, size


class Archive:
    """Set of current global optima and their best fitness ``f_gbest``.

    A judged solution better than ``f_gbest`` by more than the fitness
    threshold empties the archive first. After ``f_gbest`` drops, entries
    that fell out of the threshold band are pruned, so every stored fitness
    stays within ``fitness_threshold`` of ``f_gbest``. Solutions closer than
    ``dedup_radius`` to a stored one replace it only when strictly better.
    """

    def __init__(self, dimension: int, fitness_threshold: float, dedup_radius: float = 0.0,
                 capacity: int = 64):
        self.fitness_threshold = float(fitness_threshold)
        self.dedup_radius = float(dedup_radius)
        self._pos = np.empty((capacity, dimension))
        self._fit = np.empty(capacity)
        self._size = 0
        self._gbest = np.array([np.inf])

    def __len__(self) -> int:
        return self._size

    @property
    def f_gbest(self) -> float:
        return float(self._gbest[0])

    @property
    def positions(self) -> np.ndarray:
        return self._pos[: self._size]

    @property
    def fitness(self) -> np.ndarray:
        return self._fit[: self._size]

    def judge(self, position, fitness: float) -> bool:
        """Offer a located extreme point; returns True when it was stored."""
        x = np.asarray(position, dtype=float).reshape(1, -1)
        return bool(self.judge_many(x, np.array([float(fitness)]))[0])

    def judge_many(self, positions: np.ndarray, fitness: np.ndarray) -> np.ndarray:
        """Judge several points in order; equivalent to repeated :meth:`judge`."""
        xs = np.ascontiguousarray(positions, dtype=float)
        fs = np.ascontiguousarray(fitness, dtype=float)
        stored = np.zeros(fs.size, dtype=np.bool_)
        start = 0
        while start < fs.size:
            start, self._size = _judge_batch(
                self._pos, self._fit, self._size, self._gbest, xs, fs, start, fs.size,
                self.fitness_threshold, self.dedup_radius, stored)
            if start < fs.size:
                self._grow()
        return stored

    def _grow(self) -> None:
        cap = 2 * self._pos.shape[0]
        pos = np.empty((cap, self._pos.shape[1]))
        fit = np.empty(cap)
        pos[: self._size] = self.positions
        fit[: self._size] = self.fitness
        self._pos, self._fit = pos, fit

    def clear(self) -> None:
        self._size = 0
