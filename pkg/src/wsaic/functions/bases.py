"""Base objective functions in minimization form.

Every base is shifted so that its global minimum value is exactly zero, which
makes fitness values read directly as errors. Separable bases are evaluated
block by block over consecutive coordinates; the others take the whole vector.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

# Minimum of the six-hump camel back function, (x, y) = (+-0.0898..., -+0.7126...).
SIX_HUMP_MIN = -1.0316284534898773504


class BaseFunction(enum.Enum):
    TWO_PEAK_TRAP = "two_peak_trap"
    FIVE_UNEVEN_PEAK_TRAP = "five_uneven_peak_trap"
    EQUAL_MINIMA = "equal_minima"
    DECREASING_MINIMA = "decreasing_minima"
    UNEVEN_MINIMA = "uneven_minima"
    HIMMELBLAU = "himmelblau"
    SIX_HUMP_CAMEL = "six_hump_camel"
    VINCENT = "vincent"
    GRIEWANK = "griewank"
    ACKLEY = "ackley"
    ROSENBROCK = "rosenbrock"
    RASTRIGIN = "rastrigin"
    SCAFFER_F6 = "scaffer_f6"

    @property
    def spec(self) -> BaseSpec:
        return BASE_SPECS[self]


@dataclass(frozen=True)
class BaseSpec:
    """Static description of a base function.

    ``arity`` is the block size for separable bases and ``None`` for bases
    that consume the whole vector. ``native_lower``/``native_upper`` hold one
    entry per block coordinate (a single entry for whole-vector bases).
    ``block_optima`` lists the global minimizers of one block in native
    coordinates; ``None`` means the minimizer is the native origin of every
    coordinate (whole-vector bases).
    """

    code: int
    arity: int | None
    native_lower: tuple[float, ...]
    native_upper: tuple[float, ...]
    block_optima: tuple[tuple[float, ...], ...] | None
    clip_native: bool
    label: str


_VINCENT_OPTIMA = tuple((math.exp((math.pi / 2 + 2 * math.pi * k) / 10),) for k in range(-2, 4))
_UNEVEN_OPTIMA = tuple(((0.15 + 0.2 * k) ** (4.0 / 3.0),) for k in range(5))

BASE_SPECS: dict[BaseFunction, BaseSpec] = {
    BaseFunction.TWO_PEAK_TRAP: BaseSpec(
        0, 1, (-10.0,), (30.0,), ((20.0,),), True, "Two-Peak Trap"),
    BaseFunction.FIVE_UNEVEN_PEAK_TRAP: BaseSpec(
        1, 1, (0.0,), (30.0,), ((0.0,), (30.0,)), True, "Five-Uneven-Peak Trap"),
    BaseFunction.EQUAL_MINIMA: BaseSpec(
        2, 1, (0.0,), (1.0,), tuple((0.1 + 0.2 * k,) for k in range(5)), True, "Equal Minima"),
    BaseFunction.DECREASING_MINIMA: BaseSpec(
        3, 1, (0.0,), (1.0,), ((0.1,),), True, "Decreasing Minima"),
    BaseFunction.UNEVEN_MINIMA: BaseSpec(
        4, 1, (0.0,), (1.0,), _UNEVEN_OPTIMA, True, "Uneven Minima"),
    BaseFunction.HIMMELBLAU: BaseSpec(
        5, 2, (-6.0, -6.0), (6.0, 6.0),
        (
            (3.0, 2.0),
            (-2.8051180869527448531, 3.1313125182505729658),
            (-3.7793102533777468919, -3.2831859912861694123),
            (3.5844283403304917449, -1.8481265269644035535),
        ),
        True, "Himmelblau"),
    BaseFunction.SIX_HUMP_CAMEL: BaseSpec(
        6, 2, (-1.9, -1.1), (1.9, 1.1),
        (
            (0.089842013100318062456, -0.7126564030207396334),
            (-0.089842013100318062456, 0.7126564030207396334),
        ),
        True, "Six-Hump Camel Back"),
    BaseFunction.VINCENT: BaseSpec(
        7, 1, (0.25,), (10.0,), _VINCENT_OPTIMA, True, "Vincent"),
    BaseFunction.GRIEWANK: BaseSpec(8, None, (-100.0,), (100.0,), None, False, "Griewank"),
    BaseFunction.ACKLEY: BaseSpec(9, None, (-100.0,), (100.0,), None, False, "Ackley"),
    BaseFunction.ROSENBROCK: BaseSpec(10, None, (-100.0,), (100.0,), None, False, "Rosenbrock"),
    BaseFunction.RASTRIGIN: BaseSpec(11, 1, (-100.0,), (100.0,), ((0.0,),), False, "Rastrigin"),
    BaseFunction.SCAFFER_F6: BaseSpec(
        12, 2, (-100.0, -100.0), (100.0, 100.0), ((0.0, 0.0),), False, "Scaffer F6"),
}


@njit(cache=True)
def _two_peak_trap(t):
    if t < 0.0:
        g = -160.0 + t * t
    elif t < 15.0:
        g = 160.0 / 15.0 * (t - 15.0)
    elif t < 20.0:
        g = 200.0 / 5.0 * (15.0 - t)
    else:
        g = -200.0 + (t - 20.0) * (t - 20.0)
    return g + 200.0


@njit(cache=True)
def _five_uneven_peak_trap(t):
    if t < 2.5:
        g = 80.0 * (2.5 - t)
    elif t < 5.0:
        g = 64.0 * (t - 2.5)
    elif t < 7.5:
        g = 64.0 * (7.5 - t)
    elif t < 12.5:
        g = 28.0 * (t - 7.5)
    elif t < 17.5:
        g = 28.0 * (17.5 - t)
    elif t < 22.5:
        g = 32.0 * (t - 17.5)
    elif t < 27.5:
        g = 32.0 * (27.5 - t)
    else:
        g = 80.0 * (t - 27.5)
    return 200.0 - g


@njit(cache=True)
def _equal_minima(t):
    return 1.0 - math.sin(5.0 * math.pi * t) ** 6


@njit(cache=True)
def _decreasing_minima(t):
    envelope = math.exp(-2.0 * math.log(2.0) * ((t - 0.1) / 0.8) ** 2)
    return 1.0 - envelope * math.sin(5.0 * math.pi * t) ** 6


@njit(cache=True)
def _uneven_minima(t):
    return 1.0 - math.sin(5.0 * math.pi * (t**0.75 - 0.05)) ** 6


@njit(cache=True)
def _himmelblau(x, y):
    return (x * x + y - 11.0) ** 2 + (x + y * y - 7.0) ** 2


@njit(cache=True)
def _six_hump_camel(x, y):
    x2 = x * x
    y2 = y * y
    value = (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x * y + (-4.0 + 4.0 * y2) * y2
    return value - SIX_HUMP_MIN


@njit(cache=True)
def _vincent(t):
    return 1.0 - math.sin(10.0 * math.log(t))


@njit(cache=True)
def _scaffer_f6(x, y):
    r2 = x * x + y * y
    s = math.sin(math.sqrt(r2))
    return 0.5 + (s * s - 0.5) / (1.0 + 0.001 * r2) ** 2


@njit(cache=True)
def _griewank(t):
    total = 0.0
    prod = 1.0
    for k in range(t.size):
        total += t[k] * t[k]
        prod *= math.cos(t[k] / math.sqrt(k + 1.0))
    return total / 4000.0 - prod + 1.0


@njit(cache=True)
def _ackley(t):
    n = t.size
    sq = 0.0
    cs = 0.0
    for k in range(n):
        sq += t[k] * t[k]
        cs += math.cos(2.0 * math.pi * t[k])
    value = -20.0 * math.exp(-0.2 * math.sqrt(sq / n)) - math.exp(cs / n) + 20.0 + math.e
    return max(value, 0.0)


@njit(cache=True)
def _rosenbrock(t):
    # optimum moved to the origin: evaluates the classic form at t + 1
    total = 0.0
    for k in range(t.size - 1):
        a = t[k] + 1.0
        b = t[k + 1] + 1.0
        total += 100.0 * (b - a * a) ** 2 + (a - 1.0) ** 2
    return total


@njit(cache=True)
def _rastrigin(t):
    return t * t - 10.0 * math.cos(2.0 * math.pi * t) + 10.0


@njit(cache=True)
def native_value(code, t):
    """Objective value of a vector ``t`` already in native coordinates."""
    n = t.size
    total = 0.0
    if code == 0:
        for k in range(n):
            total += _two_peak_trap(t[k])
    elif code == 1:
        for k in range(n):
            total += _five_uneven_peak_trap(t[k])
    elif code == 2:
        for k in range(n):
            total += _equal_minima(t[k])
    elif code == 3:
        for k in range(n):
            total += _decreasing_minima(t[k])
    elif code == 4:
        for k in range(n):
            total += _uneven_minima(t[k])
    elif code == 5:
        for k in range(0, n, 2):
            total += _himmelblau(t[k], t[k + 1])
    elif code == 6:
        for k in range(0, n, 2):
            total += _six_hump_camel(t[k], t[k + 1])
    elif code == 7:
        for k in range(n):
            total += _vincent(t[k])
    elif code == 8:
        total = _griewank(t)
    elif code == 9:
        total = _ackley(t)
    elif code == 10:
        total = _rosenbrock(t)
    elif code == 11:
        for k in range(n):
            total += _rastrigin(t[k])
    elif code == 12:
        for k in range(0, n, 2):
            total += _scaffer_f6(t[k], t[k + 1])
    else:
        total = np.nan
    return total


@njit(cache=True)
def to_native(x, kargs, out):
    """Map a search-space point through shift, rotation and the domain map."""
    code, lower, upper, shift, rot, rotated, nlo, nhi, clip = kargs
    n = x.size
    period = nlo.size
    if rotated:
        for r in range(n):
            acc = 0.0
            for c in range(n):
                acc += rot[r, c] * (x[c] - shift[c])
            out[r] = acc
    else:
        for r in range(n):
            out[r] = x[r] - shift[r]
    for k in range(n):
        j = k % period
        v = nlo[j] + (out[k] - lower[k]) / (upper[k] - lower[k]) * (nhi[j] - nlo[j])
        if clip:
            if v < nlo[j]:
                v = nlo[j]
            elif v > nhi[j]:
                v = nhi[j]
        out[k] = v
    return out


@njit(cache=True)
def evaluate_kernel(x, kargs, work):
    """Objective value at search-space point ``x``; ``work`` is scratch of size n."""
    to_native(x, kargs, work)
    return native_value(kargs[0], work)


@njit(cache=True)
def evaluate_rows(xs, kargs):
    out = np.empty(xs.shape[0])
    work = np.empty(xs.shape[1])
    for r in range(xs.shape[0]):
        out[r] = evaluate_kernel(xs[r], kargs, work)
    return out


@njit(cache=True)
def native_rows(code, ts):
    """Evaluate rows of native-coordinate points (used by the grid oracle)."""
    out = np.empty(ts.shape[0])
    for r in range(ts.shape[0]):
        out[r] = native_value(code, ts[r])
    return out
