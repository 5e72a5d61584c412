"""Seeded batch execution and the on-disk results bundle.

Bundle layout::

    manifest.json              resolved configuration and seeds
    runs.csv                   one row per run
    traces/run_000.csv         (evaluations, best_fitness) samples
    solutions/run_000.csv      returned solutions: fitness then coordinates
    summary.csv                SR, ANOF and quality, written last

Every file is written to a temporary name and renamed into place, and the
summary only appears once all runs are stored, so an interrupted batch
never leaves a summary behind.
"""

from __future__ import annotations

import csv
import io
import json
import os
import shutil
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .. import __version__
from ..algorithms import run
from ..metrics import RunRecord, anof, quality_stats, success_rate
from .config import ExperimentConfig

RUNS_FIELDS = ("run", "seed", "matched_optima", "best_fitness", "evaluations_used",
               "solution_count", "mean_solution_fitness")
SUMMARY_FIELDS = ("function", "algorithm", "runs", "known_optima", "success_rate",
                  "anof_mean", "anof_std", "quality_mean", "quality_std")
_OWNED = ("manifest.json", "runs.csv", "summary.csv")
_OWNED_DIRS = ("traces", "solutions")


def fmt(value) -> str:
    """Text form used in every CSV: integers verbatim, floats with 17 digits."""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return "%.17g" % float(value)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass(frozen=True)
class BatchSummary:
    function: str
    algorithm: str
    runs: int
    known_optima: int
    success_rate: float
    anof_mean: float
    anof_std: float
    quality_mean: float
    quality_std: float

    def row(self):
        return [getattr(self, f) for f in SUMMARY_FIELDS]


def summarize(records: list[RunRecord], function: str, algorithm: str, known_optima: int) -> BatchSummary:
    mean, std = anof(records)
    quality = quality_stats(records) or (float("nan"), float("nan"))
    return BatchSummary(function, algorithm, len(records), known_optima,
                        success_rate(records, known_optima), mean, std, *quality)


def _one_run(config: ExperimentConfig, seed: int) -> RunRecord:
    problem = config.build_problem()
    return run(config.algorithm, problem, config.build_params(), seed,
               trace_stride=config.trace_stride, niche_radius=config.niche_radius)


def _run_row(index: int, rec: RunRecord) -> list:
    mean_fit = float(rec.fitness.mean()) if rec.fitness.size else float("nan")
    return [index, rec.seed, rec.matched_optima, rec.best_fitness, rec.evaluations_used,
            rec.solution_count, mean_fit]


def _clear_bundle(out: Path) -> None:
    for name in _OWNED:
        (out / name).unlink(missing_ok=True)
    for name in _OWNED_DIRS:
        if (out / name).is_dir():
            shutil.rmtree(out / name)


def _manifest(config: ExperimentConfig, known_optima: int, dimension: int) -> str:
    params = config.build_params()
    body = {
        "package_version": __version__,
        "function": config.function_id,
        "algorithm": config.algorithm.lower(),
        "preset": config.preset,
        "dimension": dimension,
        "epsilon_f": config.resolved_epsilon,
        "population": params.population,
        "budget": params.budget,
        "algorithm_params": asdict(params),
        "runs": config.resolved_runs,
        "base_seed": config.base_seed,
        "seeds": config.seeds(),
        "transform": asdict(config.transform),
        "trace_stride": config.trace_stride,
        "niche_radius": config.niche_radius,
        "known_optima": known_optima,
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def run_batch(config: ExperimentConfig, output=None, progress=None) -> BatchSummary:
    """Execute every run of ``config`` and write the results bundle.

    ``progress``, if given, is called as ``progress(done, total, record)``
    after each run is stored.
    """
    if output is not None:
        config = config.with_overrides(output=str(output))
    config.validate()
    out = Path(config.output)
    problem = config.build_problem()
    known = problem.registry.count
    out.mkdir(parents=True, exist_ok=True)
    _clear_bundle(out)
    atomic_write(out / "manifest.json", _manifest(config, known, problem.dimension))

    seeds = config.seeds()
    records: list[RunRecord] = []
    rows = []

    def collect(index: int, rec: RunRecord) -> None:
        tag = f"run_{index:03d}.csv"
        atomic_write(out / "traces" / tag, _csv_text(("evaluations", "best_fitness"), rec.trace.tolist()
                                                     if rec.trace.size else []))
        header = ["fitness"] + [f"x{j}" for j in range(problem.dimension)]
        sol_rows = [[f, *x] for f, x in zip(rec.fitness.tolist(), rec.positions.tolist())]
        atomic_write(out / "solutions" / tag, _csv_text(header, sol_rows))
        records.append(rec)
        rows.append(_run_row(index, rec))
        if progress is not None:
            progress(len(records), len(seeds), rec)

    if config.workers > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            # map yields in submission order, so files land deterministically
            for index, rec in enumerate(pool.map(_one_run, [config] * len(seeds), seeds)):
                collect(index, rec)
    else:
        for index, seed in enumerate(seeds):
            collect(index, _one_run(config, seed))

    atomic_write(out / "runs.csv", _csv_text(RUNS_FIELDS, rows))
    summary = summarize(records, config.function_id, config.algorithm.lower(), known)
    atomic_write(out / "summary.csv", _csv_text(SUMMARY_FIELDS, [summary.row()]))
    return summary


# reading bundles back ------------------------------------------------------

def read_manifest(bundle) -> dict:
    path = Path(bundle) / "manifest.json"
    if not path.is_file():
        raise FileNotFoundError(f"{str(bundle)!r} is not a results bundle (no manifest.json)")
    return json.loads(path.read_text())


def read_runs(bundle) -> list[dict]:
    path = Path(bundle) / "runs.csv"
    if not path.is_file():
        raise FileNotFoundError(f"{str(bundle)!r} has no runs.csv; the batch did not finish")
    with path.open(newline="") as fh:
        return [
            {k: (int(v) if k in ("run", "seed", "matched_optima", "evaluations_used",
                                 "solution_count") else float(v)) for k, v in row.items()}
            for row in csv.DictReader(fh)
        ]


def read_summary(bundle) -> dict:
    with (Path(bundle) / "summary.csv").open(newline="") as fh:
        row = next(csv.DictReader(fh))
    return {k: (v if k in ("function", "algorithm") else
                int(v) if k in ("runs", "known_optima") else float(v)) for k, v in row.items()}


def summary_from_runs(bundle) -> dict:
    """Recompute the summary statistics from the stored per-run files."""
    manifest = read_manifest(bundle)
    runs = read_runs(bundle)
    known = manifest["known_optima"]
    matched = np.array([r["matched_optima"] for r in runs], dtype=float)
    fitness = []
    for r in runs:
        path = Path(bundle) / "solutions" / f"run_{r['run']:03d}.csv"
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        if data.size:
            fitness.append(data[:, 0])
    pooled = np.concatenate(fitness) if fitness else np.array([np.nan])
    return {
        "runs": len(runs),
        "known_optima": known,
        "success_rate": float(np.mean(matched == known)),
        "anof_mean": float(matched.mean()),
        "anof_std": float(matched.std()),
        "quality_mean": float(pooled.mean()),
        "quality_std": float(pooled.std()),
    }
