"""Whale swarm algorithm with iterative counter (WSA-IC) for multimodal optimization."""

from .algorithms import (
    FerpsoParams,
    LipsParams,
    WsaIcParams,
    WsaParams,
    run,
    sample_moments,
)
from .core import Bounds, ConfigurationError, find_better_nearest
from .functions import BaseFunction, Problem, build_problem, make_problem
from .metrics import RunRecord, anof, count_matched_optima, success_rate, z_test

__version__ = "0.1.0"
