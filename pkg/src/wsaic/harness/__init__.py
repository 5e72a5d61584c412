from .batch import (
    BatchSummary,
    atomic_write,
    read_manifest,
    read_runs,
    read_summary,
    run_batch,
    summarize,
    summary_from_runs,
)
from .compare import METRICS, ComparisonRow, ComparisonTable, compare
from .config import (
    DESK_BUDGET_DIVISOR,
    DESK_EPSILON,
    DESK_RUNS,
    PAPER_RUNS,
    ExperimentConfig,
    TransformSource,
    config_from_mapping,
    load_config,
)

__all__ = [
    "BatchSummary",
    "ComparisonRow",
    "ComparisonTable",
    "DESK_BUDGET_DIVISOR",
    "DESK_EPSILON",
    "DESK_RUNS",
    "ExperimentConfig",
    "METRICS",
    "PAPER_RUNS",
    "TransformSource",
    "atomic_write",
    "compare",
    "config_from_mapping",
    "load_config",
    "read_manifest",
    "read_runs",
    "read_summary",
    "run_batch",
    "summarize",
    "summary_from_runs",
]
