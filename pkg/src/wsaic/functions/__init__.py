from .bases import BASE_SPECS, BaseFunction, BaseSpec
from .problem import (
    NotOrthogonalError,
    Problem,
    TransformDimensionError,
    TransformFileError,
    TransformParseError,
    load_transform_files,
    make_problem,
    make_rotation,
    make_shift,
)
from .registry import OptimaRegistry, per_block_count, registry_lookup
from .suite import SUITE, SuiteEntry, build_problem, suite_entry

__all__ = [
    "BASE_SPECS",
    "BaseFunction",
    "BaseSpec",
    "NotOrthogonalError",
    "OptimaRegistry",
    "Problem",
    "SUITE",
    "SuiteEntry",
    "TransformDimensionError",
    "TransformFileError",
    "TransformParseError",
    "build_problem",
    "load_transform_files",
    "make_problem",
    "make_rotation",
    "make_shift",
    "per_block_count",
    "registry_lookup",
    "suite_entry",
]
