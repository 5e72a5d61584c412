"""Monte-Carlo estimates of the coefficients of the WSA-IC position update.

With ``eta = 0`` and ``rho0 = 2`` a moved coordinate is ``A*x + B*y`` with
``B ~ U[0, 2)`` and ``A = 1 - B``, so ``E[A] = 0``, ``E[B] = 1``,
``Var[A] = Var[B] = 1/3`` and ``E[AB] = -1/3``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .whales import move_kernel

MOMENT_TARGETS = {
    "mean_a": 0.0,
    "mean_b": 1.0,
    "var_a": 1.0 / 3.0,
    "var_b": 1.0 / 3.0,
    "mean_ab": -1.0 / 3.0,
}


@dataclass(frozen=True)
class MomentEstimates:
    n_samples: int
    mean_a: float
    mean_b: float
    var_a: float
    var_b: float
    mean_ab: float

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in MOMENT_TARGETS}

    def deviations(self) -> dict[str, float]:
        return {k: abs(v - MOMENT_TARGETS[k]) for k, v in self.as_dict().items()}


def sample_moments(n_samples: int, rng: np.random.Generator, rho0: float = 2.0) -> MomentEstimates:
    """Estimate the moments by running the actual move on unit guidance.

    Moving ``x = 0`` toward ``y = 1`` returns ``B`` in every coordinate;
    ``A`` follows as ``1 - B``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    zeros = np.zeros(n_samples)
    ones = np.ones(n_samples)
    b = move_kernel(zeros, ones, float(rho0), 0.0, np.full(n_samples, -np.inf),
                    np.full(n_samples, np.inf), rng, np.empty(n_samples))
    a = 1.0 - b
    return MomentEstimates(
        n_samples=n_samples,
        mean_a=float(a.mean()),
        mean_b=float(b.mean()),
        var_a=float(a.var()),
        var_b=float(b.var()),
        mean_ab=float(np.mean(a * b)),
    )
