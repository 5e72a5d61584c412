"""Experiment configuration: TOML ingestion, presets and pre-flight checks.

A config file looks like::

    function = "F6"
    preset = "desk"          # optional: "paper" (default) or "desk"
    runs = 25                # optional; preset decides otherwise
    base_seed = 0
    output = "results/f6-wsaic"

    [algorithm]
    name = "wsa-ic"

    [algorithm.params]       # optional overrides
    stability_threshold = 400

    [transform]              # optional
    source = "none"          # none | seed | files

Fields left out take their defaults from the function table and the preset.
Run ``i`` of a batch uses seed ``base_seed + i``.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import numpy as np

from ..algorithms import algorithm_classes
from ..core import Bounds, ConfigurationError
from ..functions import Problem, build_problem, suite_entry

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

PRESETS = ("paper", "desk")
DESK_BUDGET_DIVISOR = 10
DESK_RUNS = 25
PAPER_RUNS = 51
# Desk budgets cannot reach 1e-8 on Himmelblau reliably; accuracy is relaxed there only.
DESK_EPSILON = {"F6": 1e-6}

_TOP_KEYS = {
    "function", "preset", "dimension", "bounds", "epsilon_f", "population", "budget",
    "runs", "base_seed", "trace_stride", "output", "workers", "niche_radius",
    "algorithm", "transform",
}
_TRANSFORM_KEYS = {"source", "seed", "shift_file", "rotation_file"}


@dataclass(frozen=True)
class TransformSource:
    source: str = "none"
    seed: int = 0
    shift_file: str | None = None
    rotation_file: str | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    function: str
    algorithm: str = "wsa-ic"
    algorithm_params: dict[str, Any] = field(default_factory=dict)
    preset: str = "paper"
    dimension: int | None = None
    bounds: tuple[float, float] | None = None
    epsilon_f: float | None = None
    population: int | None = None
    budget: int | None = None
    runs: int | None = None
    base_seed: int = 0
    transform: TransformSource = TransformSource()
    trace_stride: int | None = None
    output: str | None = None
    workers: int = 1
    niche_radius: float | None = None

    # resolved views -------------------------------------------------------

    @property
    def function_id(self) -> str:
        return suite_entry(self.function).fid

    @property
    def resolved_runs(self) -> int:
        if self.runs is not None:
            return int(self.runs)
        return DESK_RUNS if self.preset == "desk" else PAPER_RUNS

    @property
    def resolved_population(self) -> int:
        return int(self.population) if self.population is not None else suite_entry(self.function).population

    @property
    def resolved_budget(self) -> int:
        if self.budget is not None:
            return int(self.budget)
        full = suite_entry(self.function).budget
        return full // DESK_BUDGET_DIVISOR if self.preset == "desk" else full

    @property
    def resolved_epsilon(self) -> float:
        if self.epsilon_f is not None:
            return float(self.epsilon_f)
        entry = suite_entry(self.function)
        if self.preset == "desk":
            return DESK_EPSILON.get(entry.fid, entry.epsilon_f)
        return entry.epsilon_f

    def seeds(self) -> list[int]:
        return [self.base_seed + i for i in range(self.resolved_runs)]

    def build_problem(self) -> Problem:
        t = self.transform
        dim = self.dimension if self.dimension is not None else suite_entry(self.function).dimension
        bounds = None if self.bounds is None else Bounds.cube(dim, *self.bounds)
        return build_problem(
            self.function, dimension=dim, bounds=bounds, epsilon_f=self.resolved_epsilon,
            transform=t.source, transform_seed=t.seed,
            shift_file=t.shift_file, rotation_file=t.rotation_file,
        )

    def build_params(self):
        _, params_cls = algorithm_classes(self.algorithm)
        values = dict(self.algorithm_params)
        values.setdefault("population", self.resolved_population)
        values.setdefault("budget", self.resolved_budget)
        if self.algorithm.lower() == "wsa":
            values.setdefault("eta", suite_entry(self.function).wsa_eta)
        return params_cls.from_mapping(values)

    def with_overrides(self, **changes) -> ExperimentConfig:
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)

    def validate(self, check_output: bool = True) -> None:
        """Pre-flight checks; raises :class:`ConfigurationError` on the first problem."""
        suite_entry(self.function)
        algorithm_classes(self.algorithm)
        if self.preset not in PRESETS:
            raise ConfigurationError(f"preset must be one of {PRESETS}, got {self.preset!r}")
        if self.resolved_runs < 1:
            raise ConfigurationError("runs must be at least 1")
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")
        if self.trace_stride is not None and self.trace_stride < 1:
            raise ConfigurationError("trace_stride must be positive")
        if self.niche_radius is not None and not self.niche_radius > 0:
            raise ConfigurationError("niche_radius must be positive")
        if self.resolved_epsilon <= 0:
            raise ConfigurationError("epsilon_f must be positive")
        problem = self.build_problem()
        self.build_params().resolve(problem)
        if check_output:
            if self.output is None:
                raise ConfigurationError("no output directory given")
            _check_writable(Path(self.output))


def _check_writable(path: Path) -> None:
    probe = path
    while not probe.exists():
        if probe.parent == probe:
            break
        probe = probe.parent
    if not probe.is_dir() or not os.access(probe, os.W_OK | os.X_OK):
        raise ConfigurationError(f"output directory {str(path)!r} is not writable")


def _bounds_pair(value) -> tuple[float, float]:
    if isinstance(value, dict):
        unknown = set(value) - {"lower", "upper"}
        if unknown:
            raise ConfigurationError(f"unknown bounds key(s): {', '.join(sorted(unknown))}")
        low, high = value.get("lower", -100.0), value.get("upper", 100.0)
    else:
        low, high = value
    low, high = float(low), float(high)
    if not np.isfinite([low, high]).all() or low >= high:
        raise ConfigurationError(f"invalid bounds [{low}, {high}]")
    return low, high


def config_from_mapping(data: dict, base_dir: Path | None = None) -> ExperimentConfig:
    """Build a config from parsed TOML. Relative paths resolve against ``base_dir``."""
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigurationError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    if "function" not in data:
        raise ConfigurationError("config needs a 'function' id")

    def rel(p):
        if p is None or base_dir is None or Path(p).is_absolute():
            return p
        return str(base_dir / p)

    algo = data.get("algorithm", {})
    if isinstance(algo, str):
        algo = {"name": algo}
    bad = set(algo) - {"name", "params"}
    if bad:
        raise ConfigurationError(f"unknown [algorithm] key(s): {', '.join(sorted(bad))}")

    tr = data.get("transform", {})
    bad = set(tr) - _TRANSFORM_KEYS
    if bad:
        raise ConfigurationError(f"unknown [transform] key(s): {', '.join(sorted(bad))}")
    transform = TransformSource(
        source=tr.get("source", "none"),
        seed=int(tr.get("seed", 0)),
        shift_file=rel(tr.get("shift_file")),
        rotation_file=rel(tr.get("rotation_file")),
    )

    def opt(key, cast):
        return None if key not in data else cast(data[key])

    return ExperimentConfig(
        function=str(data["function"]),
        algorithm=str(algo.get("name", "wsa-ic")),
        algorithm_params=dict(algo.get("params", {})),
        preset=str(data.get("preset", "paper")),
        dimension=opt("dimension", int),
        bounds=opt("bounds", _bounds_pair),
        epsilon_f=opt("epsilon_f", float),
        population=opt("population", int),
        budget=opt("budget", int),
        runs=opt("runs", int),
        base_seed=int(data.get("base_seed", 0)),
        transform=transform,
        trace_stride=opt("trace_stride", int),
        output=rel(data.get("output")),
        workers=int(data.get("workers", 1)),
        niche_radius=opt("niche_radius", float),
    )


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {str(path)!r}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"malformed config {str(path)!r}: {exc}") from exc
    return config_from_mapping(data, base_dir=path.parent)
