"""Benchmark problems: a base function embedded in a box with shift and rotation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from ..core import Bounds, ConfigurationError
from .bases import BaseFunction, evaluate_kernel, evaluate_rows
from .registry import OptimaRegistry, registry_lookup

ORTHOGONALITY_TOL = 1e-10
EXTERNAL_ORTHOGONALITY_TOL = 1e-6


class TransformFileError(ValueError):
    """Problem with a user-supplied shift or rotation file."""


class TransformParseError(TransformFileError):
    pass


class TransformDimensionError(TransformFileError):
    pass


class NotOrthogonalError(TransformFileError):
    pass


def orthogonality_error(r: np.ndarray) -> float:
    r = np.asarray(r, dtype=float)
    return float(np.max(np.abs(r.T @ r - np.eye(r.shape[0]))))


def make_rotation(seed: int, n: int) -> np.ndarray:
    """Seeded random orthogonal matrix; seed 0 gives the identity."""
    if n < 1:
        raise ConfigurationError("rotation dimension must be positive")
    if seed == 0:
        return np.eye(n)
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    err = orthogonality_error(q)
    if err >= ORTHOGONALITY_TOL:
        raise ArithmeticError(f"orthonormalization lost precision ({err:.3g})")
    return q


def make_shift(seed: int, bounds: Bounds, fraction: float = 0.8) -> np.ndarray:
    """Seeded shift vector inside the central ``fraction`` of the box."""
    if seed == 0:
        return np.zeros(bounds.dim)
    rng = np.random.default_rng(seed)
    centre = (bounds.lower + bounds.upper) / 2
    half = fraction * bounds.width / 2
    return rng.uniform(centre - half, centre + half)


def _read_reals(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise TransformParseError(f"cannot read {path}: {exc}") from exc
    rows = [line.split() for line in text.splitlines() if line.strip()]
    try:
        data = [[float(tok) for tok in row] for row in rows]
    except ValueError as exc:
        raise TransformParseError(f"{path}: {exc}") from exc
    if not data:
        raise TransformParseError(f"{path}: no numbers found")
    return data


def load_transform_files(shift_path, rotation_path, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Read a shift vector and an ``n x n`` rotation matrix from text files.

    Both files hold whitespace-separated reals; the matrix is row-major with
    one row per line.
    """
    shift_rows = _read_reals(shift_path)
    shift = np.array([v for row in shift_rows for v in row])
    if shift.size != n:
        raise TransformDimensionError(f"{shift_path}: expected {n} values, found {shift.size}")

    rot_rows = _read_reals(rotation_path)
    if len(rot_rows) != n or any(len(row) != n for row in rot_rows):
        raise TransformDimensionError(f"{rotation_path}: expected a {n}x{n} matrix")
    rotation = np.array(rot_rows)
    err = orthogonality_error(rotation)
    if err >= EXTERNAL_ORTHOGONALITY_TOL:
        raise NotOrthogonalError(f"{rotation_path}: max |R^T R - I| = {err:.3g}")
    return shift, rotation


@dataclass(frozen=True, eq=False)
class Problem:
    """A minimization problem over a box.

    A point ``x`` is evaluated as ``base(map(R @ (x - shift)))`` where ``map``
    sends the box affinely onto the base's native domain coordinate-wise.
    """

    base: BaseFunction
    dimension: int
    bounds: Bounds
    shift: np.ndarray
    rotation: np.ndarray | None = None
    epsilon_f: float = 1e-8
    name: str = ""

    def __post_init__(self):
        arity = self.base.spec.arity
        if arity is not None and self.dimension % arity:
            raise ConfigurationError(
                f"{self.base.value}: dimension {self.dimension} is not a multiple of {arity}")
        if self.bounds.dim != self.dimension:
            raise ConfigurationError("bounds dimension differs from problem dimension")
        shift = np.array(self.shift, dtype=float).ravel()
        if shift.size != self.dimension:
            raise ConfigurationError("shift dimension differs from problem dimension")
        shift.flags.writeable = False
        object.__setattr__(self, "shift", shift)
        if self.rotation is not None:
            rot = np.array(self.rotation, dtype=float)
            if rot.shape != (self.dimension, self.dimension):
                raise ConfigurationError("rotation must be an n x n matrix")
            if orthogonality_error(rot) >= EXTERNAL_ORTHOGONALITY_TOL:
                raise ConfigurationError("rotation is not orthogonal")
            rot.flags.writeable = False
            object.__setattr__(self, "rotation", rot)
        if not self.epsilon_f > 0:
            raise ConfigurationError("epsilon_f must be positive")
        if not self.name:
            object.__setattr__(self, "name", f"{self.base.value}-{self.dimension}d")

    @cached_property
    def kernel_args(self) -> tuple:
        spec = self.base.spec
        rotated = self.rotation is not None
        rot = self.rotation if rotated else np.eye(1)
        return (
            spec.code,
            np.ascontiguousarray(self.bounds.lower),
            np.ascontiguousarray(self.bounds.upper),
            np.ascontiguousarray(self.shift),
            np.ascontiguousarray(rot),
            rotated,
            np.array(spec.native_lower),
            np.array(spec.native_upper),
            spec.clip_native,
        )

    @cached_property
    def registry(self) -> OptimaRegistry:
        return registry_lookup(self.base, self.dimension, self.bounds)

    def evaluate(self, x) -> float:
        x = np.ascontiguousarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(f"expected a point of dimension {self.dimension}, got {x.shape}")
        return float(evaluate_kernel(x, self.kernel_args, np.empty(self.dimension)))

    __call__ = evaluate

    def evaluate_many(self, xs) -> np.ndarray:
        xs = np.ascontiguousarray(np.atleast_2d(xs), dtype=float)
        if xs.shape[1] != self.dimension:
            raise ValueError(f"expected rows of dimension {self.dimension}")
        return evaluate_rows(xs, self.kernel_args)

    def to_base_frame(self, xs) -> np.ndarray:
        """Undo shift and rotation; distances are preserved."""
        z = np.atleast_2d(np.asarray(xs, dtype=float)) - self.shift
        return z if self.rotation is None else z @ self.rotation.T

    def from_base_frame(self, zs) -> np.ndarray:
        zs = np.atleast_2d(np.asarray(zs, dtype=float))
        if self.rotation is not None:
            zs = zs @ self.rotation
        return zs + self.shift

    def optima_positions(self) -> np.ndarray:
        """Known global optima in this problem's search coordinates."""
        reps = self.registry.representatives
        if reps.shape[0] == 0:
            return reps
        return self.from_base_frame(reps)


def make_problem(
    base: BaseFunction | str,
    dimension: int,
    *,
    bounds: Bounds | None = None,
    shift=None,
    rotation=None,
    epsilon_f: float = 1e-8,
    name: str = "",
) -> Problem:
    base = BaseFunction(base) if isinstance(base, str) else base
    bounds = Bounds.cube(dimension) if bounds is None else bounds
    shift = np.zeros(dimension) if shift is None else shift
    return Problem(base, dimension, bounds, shift, rotation, epsilon_f, name)
