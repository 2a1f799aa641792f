"""Game-theoretic budget allocator.

A two-player zero-sum game between the network planner (Blue, rows) and a
damaging adversary (Red, columns).  Destroying element i drops the system
index from R0 to R'_i; the damage utility y_i = 1 - (R0 - R'_i) measures how
invulnerable the system is to that attack.  The payoff matrix has 1 on the
diagonal (a protected element cannot be damaged) and y_j elsewhere in column
j.  The optimal mixed strategy psi of the row player, found by LP, is read
as the fraction of budget to spend per element; budget is pumped along psi
until the first element reaches perfect reliability, and the game repeats on
the improved network until the budget runs out or the target index is met.

Elements already at reliability 1 are dropped from the game (rows and
columns): Blue gains nothing from protecting them and routing strategy mass
through their columns would let an unimprovable element cap the game value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .arrays import PathArrays, build_arrays
from .errors import GameStalledError, SimplexError, StateError
from .model import Network
from .paths import PathSet
from .simplex import simplex_solve

PSI_FLOOR = 1e-9
_PERFECT_TOL = 1e-12
_UTILITY_SLACK = 1e-12

TERMINATED_TARGET = "target_reached"
TERMINATED_BUDGET = "budget_exhausted"
TERMINATED_STALLED = "stalled"


@dataclass(frozen=True, eq=False)
class PayoffMatrix:
    """Rows = Blue's protectable elements, columns = Red's attack targets."""

    row_elements: tuple[str, ...]
    column_elements: tuple[str, ...]
    entries: np.ndarray


@dataclass(frozen=True)
class GameSolution:
    strategy: dict[str, float]
    value: float


@dataclass(frozen=True)
class GameIteration:
    index: int
    state_before: dict[str, float]
    state_after: dict[str, float]
    system_index_before: float
    damaged_indices: dict[str, float]
    utilities: dict[str, float]
    solution: GameSolution
    pumped_budget: float
    system_index_after: float


@dataclass(frozen=True)
class GameRunResult:
    iterations: tuple[GameIteration, ...]
    total_spent: float
    final_state: dict[str, float]
    final_index: float
    termination: str


def damaged_index(
    network: Network,
    path_set: PathSet,
    state: Mapping[str, float],
    victim: str,
    arrays: PathArrays | None = None,
) -> float:
    """System index with the victim's reliability forced to zero."""
    if arrays is None:
        arrays = build_arrays(network, path_set)
    if victim not in arrays.index:
        raise StateError(f"unknown element id '{victim}'")
    r = arrays.state_vector(state).copy()
    r[arrays.index[victim]] = 0.0
    return float(kernels.system_index(r, arrays.path_ptr, arrays.path_elems, arrays.od_ptr))


def damage_utilities(
    network: Network,
    path_set: PathSet,
    state: Mapping[str, float],
    arrays: PathArrays | None = None,
) -> dict[str, float]:
    """y_i = 1 - (R0 - R'_i) for every element; bounded in [0, 1]."""
    if arrays is None:
        arrays = build_arrays(network, path_set)
    r = arrays.state_vector(state)
    base = float(kernels.system_index(r, arrays.path_ptr, arrays.path_elems, arrays.od_ptr))
    damaged = kernels.victim_indices(
        r, arrays.path_ptr, arrays.path_elems, arrays.od_ptr, arrays.n_elements
    )
    utilities = 1.0 - (base - damaged)
    low, high = float(utilities.min()), float(utilities.max())
    if low < -_UTILITY_SLACK or high > 1.0 + _UTILITY_SLACK:
        raise SimplexError(f"damage utility outside [0, 1]: min {low}, max {high}")
    utilities = np.clip(utilities, 0.0, 1.0)
    return arrays.state_dict(utilities)


def build_payoff(
    utilities: Mapping[str, float],
    active_elements,
    column_elements=None,
) -> PayoffMatrix:
    """Payoff matrix: entry(i, j) = 1 when i protects the attacked j, else y_j."""
    rows = tuple(active_elements)
    if not rows:
        raise ValueError("active element set is empty")
    cols = rows if column_elements is None else tuple(column_elements)
    missing = [e for e in cols if e not in utilities]
    if missing:
        raise ValueError(f"no utility for column element(s): {', '.join(missing)}")
    entries = np.empty((len(rows), len(cols)))
    for j, col in enumerate(cols):
        entries[:, j] = utilities[col]
    for i, row in enumerate(rows):
        for j, col in enumerate(cols):
            if row == col:
                entries[i, j] = 1.0
    return PayoffMatrix(row_elements=rows, column_elements=cols, entries=entries)


def solve_game(payoff: PayoffMatrix) -> GameSolution:
    """Optimal mixed row strategy and game value.

    LP: maximize v subject to (psi . column_j) >= v for every column and
    sum(psi) = 1, psi >= 0.  The value is unique; the strategy is one optimal
    vertex.  Certifies the result to 1e-9 before returning.
    """
    n_rows, n_cols = payoff.entries.shape
    objective = np.zeros(n_rows + 1)
    objective[-1] = 1.0
    constraints = np.zeros((n_cols + 1, n_rows + 1))
    constraints[:n_cols, :n_rows] = payoff.entries.T
    constraints[:n_cols, -1] = -1.0
    constraints[n_cols, :n_rows] = 1.0
    senses = [">="] * n_cols + ["="]
    rhs = np.zeros(n_cols + 1)
    rhs[-1] = 1.0
    bounds = [(0.0, None)] * n_rows + [(None, None)]
    value, solution = simplex_solve(objective, constraints, senses, rhs, bounds)
    psi = np.clip(solution[:n_rows], 0.0, None)

    if abs(psi.sum() - 1.0) > 1e-9:
        raise SimplexError(f"strategy mass {psi.sum()} differs from 1")
    expectations = payoff.entries.T @ psi
    worst = float(expectations.min())
    if worst < value - 1e-9 or abs(worst - value) > 1e-9:
        raise SimplexError(f"game value {value} not certified by column minimum {worst}")
    return GameSolution(
        strategy={e: float(p) for e, p in zip(payoff.row_elements, psi)},
        value=float(value),
    )


def pump_budget(
    state: Mapping[str, float],
    solution: GameSolution,
    costs: Mapping[str, float],
    remaining_budget: float,
    psi_floor: float = PSI_FLOOR,
) -> tuple[float, dict[str, float]]:
    """Spend along the strategy until the first element saturates at 1.

    The pumped amount is min(remaining budget, min over weighted elements of
    (1 - r_i) c_i / psi_i); element i receives psi_i * B / c_i reliability.
    Raises GameStalledError when no weighted element can still improve.
    """
    if remaining_budget < 0:
        raise ValueError("remaining budget must be nonnegative")
    target = np.inf
    for element, weight in solution.strategy.items():
        if weight > psi_floor and state[element] < 1.0 - _PERFECT_TOL:
            target = min(target, (1.0 - state[element]) * costs[element] / weight)
    if not np.isfinite(target):
        raise GameStalledError("no strategy weight on an improvable element")
    pumped = min(remaining_budget, target)
    new_state = dict(state)
    for element, weight in solution.strategy.items():
        if weight > psi_floor:
            new_state[element] = min(1.0, state[element] + weight * pumped / costs[element])
    return pumped, new_state


def run_game_allocation(
    network: Network,
    path_set: PathSet,
    total_budget: float,
    target_index: float = 1.0,
    psi_floor: float = PSI_FLOOR,
) -> GameRunResult:
    """Iterate evaluate -> utilities -> payoff -> LP -> pump until done.

    Stops when the budget is exhausted, the target index is reached, or the
    game stalls; each case terminates cleanly with the reason recorded.
    """
    if total_budget < 0:
        raise ValueError("total budget must be nonnegative")
    if target_index > 1.0:
        raise ValueError("target index cannot exceed 1")
    arrays = build_arrays(network, path_set)
    costs = network.costs()
    state = network.reliabilities()
    remaining = total_budget
    iterations: list[GameIteration] = []

    while True:
        index = float(
            kernels.system_index(
                arrays.state_vector(state), arrays.path_ptr, arrays.path_elems, arrays.od_ptr
            )
        )
        if index >= target_index - 1e-9:
            termination = TERMINATED_TARGET
            break
        if remaining <= 1e-12:
            termination = TERMINATED_BUDGET
            break
        utilities = damage_utilities(network, path_set, state, arrays=arrays)
        damaged = {
            element: index - (1.0 - utilities[element]) for element in arrays.element_ids
        }
        active = [e for e in arrays.element_ids if state[e] < 1.0 - _PERFECT_TOL]
        if not active:
            termination = TERMINATED_TARGET
            break
        payoff = build_payoff(utilities, active)
        solved = solve_game(payoff)
        strategy = {e: solved.strategy.get(e, 0.0) for e in arrays.element_ids}
        solution = GameSolution(strategy=strategy, value=solved.value)
        try:
            pumped, new_state = pump_budget(state, solution, costs, remaining, psi_floor)
        except GameStalledError:
            termination = TERMINATED_STALLED
            break
        index_after = float(
            kernels.system_index(
                arrays.state_vector(new_state), arrays.path_ptr, arrays.path_elems, arrays.od_ptr
            )
        )
        iterations.append(
            GameIteration(
                index=len(iterations) + 1,
                state_before=dict(state),
                state_after=dict(new_state),
                system_index_before=index,
                damaged_indices=damaged,
                utilities=dict(utilities),
                solution=solution,
                pumped_budget=pumped,
                system_index_after=index_after,
            )
        )
        state = new_state
        remaining -= pumped
        # each pass saturates an element or exhausts the budget
        assert len(iterations) <= arrays.n_elements + 1

    final_index = float(
        kernels.system_index(
            arrays.state_vector(state), arrays.path_ptr, arrays.path_elems, arrays.od_ptr
        )
    )
    return GameRunResult(
        iterations=tuple(iterations),
        total_spent=total_budget - remaining,
        final_state=dict(state),
        final_index=final_index,
        termination=termination,
    )
