"""Z-test comparison of two sets of results bundles."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..core import ConfigurationError, UnsupportedMetricError
from ..metrics import ComparisonVerdict, z_test
from .batch import read_manifest, read_runs

# metric -> (runs.csv column, higher is better)
METRICS = {
    "anof": ("matched_optima", True),
    "quality": ("mean_solution_fitness", False),
    "best_fitness": ("best_fitness", False),
}


@dataclass(frozen=True)
class ComparisonRow:
    function: str
    verdict: ComparisonVerdict


@dataclass(frozen=True)
class ComparisonTable:
    metric: str
    label_a: str
    label_b: str
    rows: tuple[ComparisonRow, ...]

    @property
    def tally(self) -> dict[str, int]:
        counts = {"+": 0, "=": 0, "-": 0}
        for r in self.rows:
            counts[r.verdict.symbol] += 1
        return counts

    def to_text(self) -> str:
        head = f"{'function':<10}{self.label_a + ' (mean±std)':>28}{self.label_b + ' (mean±std)':>28}{'z':>12}  verdict"
        lines = [f"metric: {self.metric}", head]
        for r in self.rows:
            v = r.verdict
            lines.append(
                f"{r.function:<10}{f'{v.mean_a:.6g}±{v.std_a:.3g}':>28}"
                f"{f'{v.mean_b:.6g}±{v.std_b:.3g}':>28}{v.z_statistic:>12.4g}  {v.symbol}")
        t = self.tally
        lines.append(f"{'+/=/-':<10}{t['+']}/{t['=']}/{t['-']}")
        return "\n".join(lines)


def _bundles(path) -> dict[str, Path]:
    """Map function id to bundle directory. ``path`` is a bundle or a directory of bundles."""
    path = Path(path)
    if (path / "manifest.json").is_file():
        return {read_manifest(path)["function"]: path}
    found: dict[str, Path] = {}
    for sub in sorted(p for p in path.iterdir() if p.is_dir()) if path.is_dir() else []:
        if (sub / "manifest.json").is_file():
            fid = read_manifest(sub)["function"]
            if fid in found:
                raise ConfigurationError(f"two bundles for {fid} under {str(path)!r}")
            found[fid] = sub
    if not found:
        raise FileNotFoundError(f"no results bundle found at {str(path)!r}")
    return found


def _column(bundle: Path, column: str) -> list[float]:
    values = [float(r[column]) for r in read_runs(bundle)]
    if any(v != v for v in values):
        raise UnsupportedMetricError(
            f"{str(bundle)!r}: some runs returned no solutions, so '{column}' is undefined")
    return values


def compare(results_a, results_b, metric: str = "anof", direction: str | None = None,
            labels: tuple[str, str] | None = None) -> ComparisonTable:
    """Per-function Z-test of bundle set ``a`` against ``b``.

    ``direction`` is ``"higher"`` or ``"lower"`` (which values are better);
    by default it follows the metric. Functions present on only one side are
    skipped; run counts must agree and be at least 30.
    """
    if metric not in METRICS:
        raise UnsupportedMetricError(f"unknown metric {metric!r}; choose from {', '.join(METRICS)}")
    column, higher = METRICS[metric]
    if direction is not None:
        if direction not in ("higher", "lower"):
            raise ConfigurationError("direction must be 'higher' or 'lower'")
        higher = direction == "higher"

    side_a, side_b = _bundles(results_a), _bundles(results_b)
    shared = [f for f in side_a if f in side_b]
    if not shared:
        raise ConfigurationError("the two result sets share no function")
    rows = []
    for fid in sorted(shared, key=lambda f: int(f[1:])):
        a, b = _column(side_a[fid], column), _column(side_b[fid], column)
        if len(a) != len(b):
            raise ConfigurationError(f"{fid}: run counts differ ({len(a)} vs {len(b)})")
        if len(a) < 30:
            raise ConfigurationError(f"{fid}: {len(a)} runs per side; the Z-test needs at least 30")
        rows.append(ComparisonRow(fid, z_test(a, b, higher_is_better=higher)))
    if labels is None:
        labels = (read_manifest(side_a[shared[0]])["algorithm"],
                  read_manifest(side_b[shared[0]])["algorithm"])
    return ComparisonTable(metric, labels[0], labels[1], tuple(rows))
