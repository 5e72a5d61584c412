"""Brute-force check of per-block global optima counts.

A dense grid over the native block domain locates discrete local minima,
each is polished with a bounded local search, duplicates are merged, and the
survivors within ``value_tol`` of the minimum value are counted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .bases import BaseFunction, native_rows
from .registry import per_block_count

EXPANDED_BASES = (
    BaseFunction.TWO_PEAK_TRAP,
    BaseFunction.FIVE_UNEVEN_PEAK_TRAP,
    BaseFunction.EQUAL_MINIMA,
    BaseFunction.DECREASING_MINIMA,
    BaseFunction.UNEVEN_MINIMA,
    BaseFunction.HIMMELBLAU,
    BaseFunction.SIX_HUMP_CAMEL,
    BaseFunction.VINCENT,
)


@dataclass
class BlockValidation:
    base: BaseFunction
    expected: int
    found: int
    minimizers: np.ndarray
    values: np.ndarray
    max_registry_offset: float

    @property
    def ok(self) -> bool:
        return self.found == self.expected


def _block_fn(base: BaseFunction):
    code = base.spec.code
    arity = base.spec.arity

    def f(t):
        return float(native_rows(code, np.asarray(t, dtype=float).reshape(1, arity))[0])

    return f


def _grid_minima_1d(values: np.ndarray) -> np.ndarray:
    padded = np.concatenate(([np.inf], values, [np.inf]))
    left = padded[:-2]
    right = padded[2:]
    return np.flatnonzero((values <= left) & (values < right))


def _grid_minima_2d(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    padded = np.pad(values, 1, constant_values=np.inf)
    centre = padded[1:-1, 1:-1]
    mask = np.ones_like(values, dtype=bool)
    rows, cols = values.shape
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == dc == 0:
                continue
            neighbour = padded[1 + dr:1 + dr + rows, 1 + dc:1 + dc + cols]
            # earlier neighbours may tie, later ones must be strictly larger
            if (dr, dc) < (0, 0):
                mask &= centre <= neighbour
            else:
                mask &= centre < neighbour
    return np.nonzero(mask)


def _merge(points: np.ndarray, values: np.ndarray, radius: float):
    order = np.argsort(values, kind="stable")
    kept = []
    for idx in order:
        if all(np.linalg.norm(points[idx] - points[k]) > radius for k in kept):
            kept.append(idx)
    return points[kept], values[kept]


def validate_base(
    base: BaseFunction,
    resolution_1d: int = 1_000_000,
    resolution_2d: int = 2000,
    value_tol: float = 1e-8,
) -> BlockValidation:
    """Count the global minimizers of one block of ``base`` by grid search."""
    spec = base.spec
    lo = np.array(spec.native_lower)
    hi = np.array(spec.native_upper)
    f = _block_fn(base)
    bounds = list(zip(lo, hi))

    if spec.arity == 1:
        grid = np.linspace(lo[0], hi[0], resolution_1d + 1)
        values = native_rows(spec.code, grid[:, None])
        idx = _grid_minima_1d(values)
        step = grid[1] - grid[0]
        refined = []
        for i in idx:
            a = max(lo[0], grid[i] - step)
            b = min(hi[0], grid[i] + step)
            res = optimize.minimize_scalar(lambda t: f([t]), bounds=(a, b), method="bounded",
                                           options={"xatol": 1e-14})
            best = (res.x, res.fun) if res.fun < values[i] else (grid[i], values[i])
            refined.append(best)
        points = np.array([[p] for p, _ in refined])
        vals = np.array([v for _, v in refined])
    else:
        gx = np.linspace(lo[0], hi[0], resolution_2d)
        gy = np.linspace(lo[1], hi[1], resolution_2d)
        mesh = np.stack(np.meshgrid(gx, gy, indexing="ij"), axis=-1).reshape(-1, 2)
        values = native_rows(spec.code, mesh).reshape(resolution_2d, resolution_2d)
        ii, jj = _grid_minima_2d(values)
        refined_pts, refined_vals = [], []
        for i, j in zip(ii, jj):
            res = optimize.minimize(f, np.array([gx[i], gy[j]]), method="L-BFGS-B",
                                    bounds=bounds, options={"ftol": 1e-16, "gtol": 1e-12})
            if res.fun < values[i, j]:
                refined_pts.append(res.x)
                refined_vals.append(res.fun)
            else:
                refined_pts.append([gx[i], gy[j]])
                refined_vals.append(values[i, j])
        points = np.array(refined_pts)
        vals = np.array(refined_vals)

    points, vals = _merge(points, vals, radius=1e-6 * float(np.max(hi - lo)))
    mask = vals <= value_tol
    minimizers = points[mask]
    registered = np.array(spec.block_optima)
    if minimizers.size:
        gaps = np.sqrt(((minimizers[:, None, :] - registered[None, :, :]) ** 2).sum(-1))
        offset = float(gaps.min(axis=1).max())
    else:
        offset = np.inf
    return BlockValidation(base, per_block_count(base), int(mask.sum()), minimizers,
                           vals[mask], offset)


def validate_all(**kwargs) -> list[BlockValidation]:
    return [validate_base(base, **kwargs) for base in EXPANDED_BASES]
