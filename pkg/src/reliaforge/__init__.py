"""Budget allocation for power-network reliability improvement.

Two allocators over the same reliability model: direct nonlinear
maximization of the mean origin-destination reliability, and an iterative
zero-sum game that routes budget toward the most vulnerable elements.
"""

from .errors import (
    EnumerationError,
    GameStalledError,
    InfeasibleProblem,
    NetworkError,
    PathLimitError,
    ReliaforgeError,
    SimplexError,
    StateError,
    UnboundedProblem,
)
from .evaluate import (
    Evaluation,
    exact_od_reliability,
    initial_state,
    od_reliability,
    path_reliability,
    system_gradient,
    system_reliability,
)
from .game import (
    GameIteration,
    GameRunResult,
    GameSolution,
    PayoffMatrix,
    build_payoff,
    damage_utilities,
    damaged_index,
    pump_budget,
    run_game_allocation,
    solve_game,
)
from .model import (
    Generator,
    Line,
    Load,
    Network,
    ODPair,
    load_network,
    parse_network,
    rtbs_network,
    serialize_network,
)
from .paths import Path, PathSet, enumerate_paths, path_counts
from .simplex import simplex_solve
from .traditional import Allocation, SolverConfig, allocate_traditional, sweep_budget

__version__ = "0.1.0"
