"""The numbered benchmark set (F1-F8 expanded, F16-F20 classical)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Bounds, ConfigurationError
from .bases import BaseFunction
from .problem import Problem, load_transform_files, make_rotation, make_shift


@dataclass(frozen=True)
class SuiteEntry:
    fid: str
    base: BaseFunction
    dimension: int
    epsilon_f: float
    population: int
    budget: int
    wsa_eta: float
    rotated: bool
    title: str


_B = BaseFunction

SUITE: dict[str, SuiteEntry] = {
    e.fid: e
    for e in [
        SuiteEntry("F1", _B.TWO_PEAK_TRAP, 5, 1e-8, 50, 6_000_000, 0.0001, True,
                   "Expanded Two-Peak Trap"),
        SuiteEntry("F2", _B.FIVE_UNEVEN_PEAK_TRAP, 5, 1e-8, 50, 180_000_000, 0.1, True,
                   "Expanded Five-Uneven-Peak Trap"),
        SuiteEntry("F3", _B.EQUAL_MINIMA, 4, 1e-8, 50, 1_500_000_000, 0.14, True,
                   "Expanded Equal Minima"),
        SuiteEntry("F4", _B.DECREASING_MINIMA, 5, 1e-8, 50, 150_000_000, 0.00005, True,
                   "Expanded Decreasing Minima"),
        SuiteEntry("F5", _B.UNEVEN_MINIMA, 3, 1e-8, 50, 90_000_000, 0.16, True,
                   "Expanded Uneven Minima"),
        SuiteEntry("F6", _B.HIMMELBLAU, 4, 1e-8, 50, 30_000_000, 0.16, True,
                   "Expanded Himmelblau's Function"),
        SuiteEntry("F7", _B.SIX_HUMP_CAMEL, 6, 1e-6, 50, 30_000_000, 0.001, True,
                   "Expanded Six-Hump Camel Back"),
        SuiteEntry("F8", _B.VINCENT, 3, 1e-4, 50, 1_500_000_000, 0.3, True,
                   "Modified Vincent Function"),
        SuiteEntry("F16", _B.GRIEWANK, 50, 1e-8, 100, 20_000_000, 0.005, False, "Griewank"),
        SuiteEntry("F17", _B.ACKLEY, 100, 1e-8, 100, 20_000_000, 0.01, False, "Ackley"),
        SuiteEntry("F18", _B.ROSENBROCK, 100, 1e-8, 100, 150_000_000, 0.014, False,
                   "Rosenbrock"),
        SuiteEntry("F19", _B.RASTRIGIN, 100, 1e-8, 100, 150_000_000, 0.005, False,
                   "Rastrigin"),
        SuiteEntry("F20", _B.SCAFFER_F6, 100, 1e-8, 100, 60_000_000, 0.01, False,
                   "Expanded Scaffer's F6"),
    ]
}


def suite_entry(fid: str) -> SuiteEntry:
    key = fid.upper()
    if key not in SUITE:
        known = ", ".join(SUITE)
        raise ConfigurationError(f"unknown function id {fid!r}; known ids: {known}")
    return SUITE[key]


def build_problem(
    fid: str,
    *,
    dimension: int | None = None,
    bounds: Bounds | None = None,
    epsilon_f: float | None = None,
    transform: str = "none",
    transform_seed: int = 0,
    shift_file=None,
    rotation_file=None,
) -> Problem:
    """Instantiate a suite function.

    ``transform`` is ``"none"`` (zero shift, no rotation), ``"seed"`` (seeded
    shift, plus a seeded rotation for F1-F8 only) or ``"files"``.
    """
    entry = suite_entry(fid)
    n = entry.dimension if dimension is None else int(dimension)
    bounds = Bounds.cube(n) if bounds is None else bounds
    eps = entry.epsilon_f if epsilon_f is None else float(epsilon_f)
    shift = np.zeros(n)
    rotation = None
    if transform == "seed":
        shift = make_shift(transform_seed, bounds)
        if entry.rotated and transform_seed != 0:
            rotation = make_rotation(transform_seed, n)
    elif transform == "files":
        if shift_file is None or rotation_file is None:
            raise ConfigurationError("transform 'files' needs shift_file and rotation_file")
        shift, rotation = load_transform_files(shift_file, rotation_file, n)
    elif transform != "none":
        raise ConfigurationError(f"unknown transform source {transform!r}")
    return Problem(entry.base, n, bounds, shift, rotation, eps, name=entry.fid)
