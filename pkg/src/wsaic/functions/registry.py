"""Known global optima of expanded benchmark problems."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..core import Bounds, ConfigurationError
from .bases import BaseFunction

# Above this many optima the registry keeps per-block data only.
ENUMERATION_LIMIT = 100_000


@dataclass(frozen=True)
class OptimaRegistry:
    """Global optima of a problem, in unshifted and unrotated search coordinates.

    The optima of an expanded function form a Cartesian product of the
    per-block optima, so ``block_optima[b]`` (shape ``(k_b, block_size)``)
    fully describes them. ``representatives`` enumerates the product when
    ``count`` is at most ``ENUMERATION_LIMIT`` and is empty otherwise.
    """

    count: int
    minimum_value: float
    block_optima: tuple[np.ndarray, ...]
    block_starts: tuple[int, ...]
    representatives: np.ndarray

    @property
    def dimension(self) -> int:
        return self.representatives.shape[1]

    @property
    def enumerable(self) -> bool:
        return self.representatives.shape[0] == self.count

    def decode(self, points) -> tuple[np.ndarray, np.ndarray]:
        """Nearest known optimum of each point.

        Returns per-block optimum indices (shape ``(m, blocks)``) and the
        Euclidean distance to that optimum. Squared distance is additive over
        blocks, so the nearest product point is the product of per-block
        nearest points.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        ids = np.empty((points.shape[0], len(self.block_optima)), dtype=np.int64)
        d2 = np.zeros(points.shape[0])
        for b, (start, optima) in enumerate(zip(self.block_starts, self.block_optima)):
            chunk = points[:, start:start + optima.shape[1]]
            dist = np.sum((chunk[:, None, :] - optima[None, :, :]) ** 2, axis=2)
            ids[:, b] = np.argmin(dist, axis=1)
            d2 += dist[np.arange(points.shape[0]), ids[:, b]]
        return ids, np.sqrt(d2)

    def min_separation(self) -> float:
        """Smallest distance between two distinct known optima (inf if only one)."""
        best = np.inf
        for optima in self.block_optima:
            if optima.shape[0] < 2:
                continue
            diff = optima[:, None, :] - optima[None, :, :]
            dist = np.sqrt(np.sum(diff**2, axis=2))
            dist[np.diag_indices_from(dist)] = np.inf
            best = min(best, float(dist.min()))
        return best


def per_block_count(base: BaseFunction) -> int:
    spec = base.spec
    return 1 if spec.block_optima is None else len(spec.block_optima)


def registry_lookup(base: BaseFunction, n: int, bounds: Bounds | None = None) -> OptimaRegistry:
    """Registry of global optima for ``base`` expanded to dimension ``n``.

    The count is the per-block count raised to the number of blocks.
    """
    spec = base.spec
    bounds = Bounds.cube(n) if bounds is None else bounds
    if bounds.dim != n:
        raise ConfigurationError(f"bounds have dimension {bounds.dim}, expected {n}")
    if n < 1:
        raise ConfigurationError("dimension must be positive")
    if base is BaseFunction.ROSENBROCK and n < 2:
        raise ConfigurationError("rosenbrock needs at least two dimensions")
    if spec.arity is not None and n % spec.arity:
        raise ConfigurationError(f"{base.value}: dimension {n} is not a multiple of {spec.arity}")

    nlo = np.array(spec.native_lower)
    nhi = np.array(spec.native_upper)

    def to_search(t, coords):
        period = np.arange(coords.start, coords.stop) % nlo.size
        lo = bounds.lower[coords]
        hi = bounds.upper[coords]
        return lo + (t - nlo[period]) / (nhi[period] - nlo[period]) * (hi - lo)

    if spec.block_optima is None:
        origin = to_search(np.zeros(n), slice(0, n))
        block_optima = (origin[None, :],)
        starts = (0,)
    else:
        native = np.array(spec.block_optima, dtype=float)
        block_optima = []
        starts = tuple(range(0, n, spec.arity))
        for s in starts:
            coords = slice(s, s + spec.arity)
            block_optima.append(np.array([to_search(t, coords) for t in native]))
        block_optima = tuple(block_optima)

    count = 1
    for optima in block_optima:
        count *= optima.shape[0]

    if count <= ENUMERATION_LIMIT:
        reps = np.array(
            [np.concatenate(combo) for combo in itertools.product(*block_optima)], dtype=float
        )
    else:
        reps = np.empty((0, n))
    for optima in block_optima:
        optima.flags.writeable = False
    reps.flags.writeable = False
    return OptimaRegistry(count, 0.0, block_optima, starts, reps)
