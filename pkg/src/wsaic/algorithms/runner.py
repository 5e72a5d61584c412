from __future__ import annotations

import numpy as np

from ..core import ConfigurationError, make_rng
from ..functions import Problem
from ..metrics import RunRecord, count_for_problem
from .params import FerpsoParams, LipsParams, WsaIcParams, WsaParams
from .pso import Ferpso, Lips
from .whales import Wsa, WsaIc

ALGORITHMS = {
    "wsa-ic": (WsaIc, WsaIcParams),
    "wsa": (Wsa, WsaParams),
    "ferpso": (Ferpso, FerpsoParams),
    "lips": (Lips, LipsParams),
}
# Per-algorithm RNG stream, so equal run seeds do not share draws across algorithms.
_STREAMS = {"wsa-ic": 1, "wsa": 2, "ferpso": 3, "lips": 4}


def algorithm_classes(name: str):
    key = name.lower()
    if key not in ALGORITHMS:
        raise ConfigurationError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    return ALGORITHMS[key]


def make_optimizer(name: str, problem: Problem, params, rng: np.random.Generator):
    cls, params_cls = algorithm_classes(name)
    if not isinstance(params, params_cls):
        raise ConfigurationError(f"{name} expects {params_cls.__name__}, got {type(params).__name__}")
    return cls(problem, params, rng)


def run(
    algorithm: str,
    problem: Problem,
    params,
    seed: int,
    trace_stride: int | None = None,
    niche_radius: float | None = None,
) -> RunRecord:
    """Run one optimizer until its evaluation budget is spent.

    Each algorithm draws from its own stream derived from ``seed``.

    The trace holds ``(evaluations, best fitness so far)`` pairs, one each
    time the evaluation count passes a multiple of ``trace_stride`` (default
    budget / 1000), plus the final state.
    """
    cls, _ = algorithm_classes(algorithm)
    params.resolve(problem)
    rng = make_rng(seed, _STREAMS[algorithm.lower()])
    stride = max(1, params.budget // 1000) if trace_stride is None else int(trace_stride)
    if stride < 1:
        raise ConfigurationError("trace stride must be positive")

    opt = make_optimizer(algorithm, problem, params, rng)
    trace = [(opt.evaluations, opt.best_fitness)]
    next_mark = (opt.evaluations // stride + 1) * stride
    while not opt.exhausted:
        opt.advance(next_mark)
        if opt.evaluations >= next_mark:
            trace.append((opt.evaluations, opt.best_fitness))
            next_mark = (opt.evaluations // stride + 1) * stride
    opt.finish()
    if trace[-1] != (opt.evaluations, opt.best_fitness):
        trace.append((opt.evaluations, opt.best_fitness))

    positions, fitness = opt.solutions()
    matched = count_for_problem(problem, positions, fitness, niche_radius)
    return RunRecord(
        algorithm=cls.name,
        problem=problem.name,
        seed=int(seed),
        positions=positions,
        fitness=fitness,
        matched_optima=matched,
        best_fitness=float(opt.best_fitness),
        evaluations_used=int(opt.evaluations),
        trace=np.array(trace, dtype=float),
    )
