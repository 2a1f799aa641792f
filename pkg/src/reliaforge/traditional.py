"""Nonlinear budget allocator: maximize the system index directly.

Chooses per-element reliability increments x >= 0 with r0 + x <= 1 and
cost . x <= budget, maximizing the mean OD reliability.  The objective is
smooth but not concave, so the solver runs multi-start projected gradient
ascent and keeps the best start; results are deterministic for a fixed
seed.  Budget sweeps warm-start each point with the previous optimum, which
also makes the achieved index nondecreasing in the budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .arrays import PathArrays, build_arrays
from .model import Network
from .paths import PathSet


@dataclass(frozen=True)
class SolverConfig:
    num_starts: int = 64
    seed: int = 42
    optimality_tol: float = 1e-6
    kkt_tol: float = 1e-6
    gain_tol: float = 1e-10
    max_iterations: int = 5000


@dataclass(frozen=True)
class Allocation:
    """Feasible increment vector with its spend and achieved index."""

    increments: dict[str, float]
    budget: float
    spent: float
    resulting_state: dict[str, float]
    achieved_index: float


def allocate_traditional(
    network: Network,
    path_set: PathSet,
    budget: float,
    config: SolverConfig | None = None,
    arrays: PathArrays | None = None,
    extra_starts: tuple[np.ndarray, ...] = (),
) -> Allocation:
    """Best allocation found across config.num_starts independent ascents.

    ``extra_starts`` adds warm-start points beyond the seeded random ones
    (used by sweep_budget); ties go to the earliest start.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if config is None:
        config = SolverConfig()
    if arrays is None:
        arrays = build_arrays(network, path_set)
    r0 = arrays.base_reliability
    upper = 1.0 - r0
    cost = arrays.cost
    n = arrays.n_elements

    if budget == 0.0:
        return _finish(arrays, np.zeros(n), budget)

    rng = np.random.default_rng(config.seed)
    starts = [np.zeros(n)]
    for _ in range(max(config.num_starts - 1, 0)):
        starts.append(rng.uniform(0.0, 1.0, n) * upper)
    starts.extend(np.asarray(s, dtype=np.float64) for s in extra_starts)

    best_x = None
    best_value = -np.inf
    best_pg = np.inf
    for x0 in starts:
        x, value, pg_norm = kernels.ascent(
            r0, upper, cost, budget, x0,
            arrays.path_ptr, arrays.path_elems, arrays.od_ptr,
            config.max_iterations, config.gain_tol, config.kkt_tol,
        )
        if value > best_value:
            best_x, best_value, best_pg = x, value, pg_norm

    # polish the winner until the stationarity tolerance holds
    for _ in range(3):
        if best_pg <= config.kkt_tol:
            break
        best_x, best_value, best_pg = kernels.ascent(
            r0, upper, cost, budget, best_x,
            arrays.path_ptr, arrays.path_elems, arrays.od_ptr,
            config.max_iterations, config.gain_tol, config.kkt_tol,
        )
    return _finish(arrays, best_x, budget)


def sweep_budget(
    network: Network,
    path_set: PathSet,
    start: float,
    stop: float,
    step: float,
    config: SolverConfig | None = None,
) -> list[tuple[float, Allocation]]:
    """One allocation per budget point on [start, stop] at the given step."""
    if start < 0 or stop < start:
        raise ValueError("need 0 <= start <= stop")
    if step <= 0:
        raise ValueError("step must be positive")
    arrays = build_arrays(network, path_set)
    budgets = []
    k = 0
    while True:
        b = round(start + k * step, 12)
        if b > stop + 1e-9:
            break
        budgets.append(min(b, stop))
        k += 1
    results = []
    warm: tuple[np.ndarray, ...] = ()
    for b in budgets:
        allocation = allocate_traditional(
            network, path_set, b, config, arrays=arrays, extra_starts=warm
        )
        results.append((b, allocation))
        warm = (np.array([allocation.increments[e] for e in arrays.element_ids]),)
    return results


def _finish(arrays: PathArrays, x: np.ndarray, budget: float) -> Allocation:
    x = np.clip(x, 0.0, 1.0 - arrays.base_reliability)
    r = np.minimum(arrays.base_reliability + x, 1.0)
    value = float(
        kernels.system_index(r, arrays.path_ptr, arrays.path_elems, arrays.od_ptr)
    )
    return Allocation(
        increments=arrays.state_dict(x),
        budget=budget,
        spent=float(arrays.cost @ x),
        resulting_state=arrays.state_dict(r),
        achieved_index=value,
    )
