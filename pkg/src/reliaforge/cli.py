"""Command-line front end.

Subcommands: paths, evaluate, allocate-traditional, allocate-game, sweep,
compare.  Data goes to files under --output-dir (and headline scalars to
stdout); diagnostics go to stderr.  Exit codes: 0 success, 1 usage error,
2 computation error.  RELIAFORGE_SEED overrides the default seed when
--seed is not given.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from .errors import ReliaforgeError
from .evaluate import system_reliability
from .game import run_game_allocation
from .model import Network, load_network
from .paths import enumerate_paths
from .reports import emit_table_csv, emit_table_json, write_json
from .traditional import SolverConfig, allocate_traditional, sweep_budget

DEFAULT_SEED = 42


def resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("RELIAFORGE_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise click.UsageError(f"RELIAFORGE_SEED must be an integer, got {env!r}")


def _emit(rows, header, directory: Path, name: str, fmt: str) -> Path:
    if fmt == "json":
        destination = directory / f"{name}.json"
        emit_table_json(rows, header, destination)
    else:
        destination = directory / f"{name}.csv"
        emit_table_csv(rows, header, destination)
    return destination


def _network_option(fn):
    return click.option(
        "--network",
        "network_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False, readable=True),
        help="Network JSON file.",
    )(fn)


def _output_options(fn):
    fn = click.option(
        "--output-dir",
        type=click.Path(file_okay=False, path_type=Path),
        default=Path("."),
        show_default=True,
        help="Directory for emitted data files.",
    )(fn)
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["csv", "json"]),
        default="csv",
        show_default=True,
        help="Table output format.",
    )(fn)


def _load(network_path) -> Network:
    return load_network(network_path)


def _budget_for(network: Network, budget: float | None) -> float:
    return network.budget if budget is None else budget


def _solver_config(starts: int | None, seed: int | None) -> SolverConfig:
    kwargs = {"seed": resolve_seed(seed)}
    if starts is not None:
        kwargs["num_starts"] = starts
    return SolverConfig(**kwargs)


@click.group(name="reliaforge")
def cli():
    """Reliability budget allocation for power networks."""


@cli.command("paths")
@_network_option
@_output_options
def paths_command(network_path, output_dir: Path, fmt: str):
    """Enumerate all simple paths per origin-destination pair."""
    network = _load(network_path)
    path_set = enumerate_paths(network)
    output_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for od in network.od_pairs():
        for i, path in enumerate(path_set[od], start=1):
            rows.append(
                [od.origin, od.destination, i, "-".join(path.buses), ",".join(path.elements)]
            )
    destination = _emit(
        rows, ["odOrigin", "odDestination", "pathIndex", "busSequence", "elements"],
        output_dir, "paths", fmt,
    )
    click.echo(f"{len(rows)} paths -> {destination}", err=True)


@cli.command("evaluate")
@_network_option
@_output_options
def evaluate_command(network_path, output_dir: Path, fmt: str):
    """Evaluate path, OD, and system reliability; print the system index."""
    network = _load(network_path)
    path_set = enumerate_paths(network)
    evaluation = system_reliability(network, path_set)
    output_dir.mkdir(parents=True, exist_ok=True)

    max_paths = max((len(v) for v in evaluation.path_reliabilities.values()), default=0)
    path_rows = []
    for od in network.od_pairs():
        values = list(evaluation.path_reliabilities[od])
        values += [None] * (max_paths - len(values))
        path_rows.append([od.origin, od.destination, *values])
    _emit(
        path_rows,
        ["generator", "load", *[f"p{i}" for i in range(1, max_paths + 1)]],
        output_dir, "path_reliabilities", fmt,
    )

    load_ids = [load.id for load in network.loads]
    od_rows = []
    for gen in network.generators:
        od_rows.append(
            [gen.id]
            + [evaluation.od_reliabilities[(gen.id, load_id)] for load_id in load_ids]
        )
    _emit(od_rows, ["generator", *load_ids], output_dir, "od_reliabilities", fmt)

    click.echo(f"{evaluation.system_index:.6f}")


@cli.command("allocate-traditional")
@_network_option
@click.option("--budget", type=click.FloatRange(min=0), default=None,
              help="Improvement budget; defaults to the network file's budget.")
@click.option("--starts", type=click.IntRange(min=1), default=None,
              help="Number of independent solver starts.")
@click.option("--seed", type=int, default=None, help="Random seed for the starts.")
@_output_options
def allocate_traditional_command(network_path, budget, starts, seed, output_dir: Path, fmt: str):
    """Allocate the budget by nonlinear maximization of the system index."""
    network = _load(network_path)
    path_set = enumerate_paths(network)
    allocation = allocate_traditional(
        network, path_set, _budget_for(network, budget), _solver_config(starts, seed)
    )
    output_dir.mkdir(parents=True, exist_ok=True)
    write_json(
        {
            "budget": allocation.budget,
            "spent": allocation.spent,
            "achievedIndex": allocation.achieved_index,
            "increments": allocation.increments,
        },
        output_dir / "traditional_allocation.json",
    )
    rows = [[e, allocation.resulting_state[e]] for e in network.element_ids]
    _emit(rows, ["element", "reliability"], output_dir, "traditional_reliabilities", fmt)
    click.echo(f"{allocation.achieved_index:.6f}")


@cli.command("sweep")
@_network_option
@click.option("--from", "start", type=click.FloatRange(min=0), default=0.0,
              show_default=True, help="First budget point.")
@click.option("--to", "stop", type=click.FloatRange(min=0), default=None,
              help="Last budget point; defaults to the network file's budget.")
@click.option("--step", type=click.FloatRange(min=0, min_open=True), default=0.1,
              show_default=True, help="Budget increment.")
@click.option("--starts", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=None)
@_output_options
def sweep_command(network_path, start, stop, step, starts, seed, output_dir: Path, fmt: str):
    """Run the traditional allocator across a range of budgets."""
    network = _load(network_path)
    path_set = enumerate_paths(network)
    stop = _budget_for(network, stop)
    if stop < start:
        raise click.UsageError("--to must be at least --from")
    results = sweep_budget(
        network, path_set, start, stop, step, _solver_config(starts, seed)
    )
    output_dir.mkdir(parents=True, exist_ok=True)

    _emit(
        [[b, a.achieved_index] for b, a in results],
        ["budget", "systemIndex"], output_dir, "sweep_index", fmt,
    )
    od_pairs = network.od_pairs()
    od_rows = []
    for b, allocation in results:
        evaluation = system_reliability(network, path_set, allocation.resulting_state)
        od_rows.append([b] + [evaluation.od_reliabilities[od] for od in od_pairs])
    _emit(
        od_rows,
        ["budget", *[f"{od.origin}-{od.destination}" for od in od_pairs]],
        output_dir, "sweep_od", fmt,
    )
    _emit(
        [[b, *[a.resulting_state[e] for e in network.element_ids]] for b, a in results],
        ["budget", *network.element_ids], output_dir, "sweep_elements", fmt,
    )
    click.echo(f"{results[-1][1].achieved_index:.6f}")


@cli.command("allocate-game")
@_network_option
@click.option("--budget", type=click.FloatRange(min=0), default=None,
              help="Total budget; defaults to the network file's budget.")
@click.option("--target", type=click.FloatRange(max=1.0), default=1.0,
              show_default=True, help="Stop once the system index reaches this value.")
@_output_options
def allocate_game_command(network_path, budget, target, output_dir: Path, fmt: str):
    """Allocate the budget by the iterative zero-sum game."""
    network = _load(network_path)
    path_set = enumerate_paths(network)
    result = run_game_allocation(network, path_set, _budget_for(network, budget), target)
    output_dir.mkdir(parents=True, exist_ok=True)
    elements = network.element_ids

    iteration_rows = []
    for it in result.iterations:
        iteration_rows.append(
            [it.index, it.pumped_budget]
            + [it.utilities[e] for e in elements]
            + [it.solution.strategy[e] for e in elements]
            + [it.state_after[e] for e in elements]
        )
    _emit(
        iteration_rows,
        ["t", "budget"]
        + [f"y_{e}" for e in elements]
        + [f"psi_{e}" for e in elements]
        + [f"r_{e}" for e in elements],
        output_dir, "game_iterations", fmt,
    )

    initial = network.reliabilities()
    cumulative_rows = []
    running = 0.0
    for it in result.iterations:
        running += it.pumped_budget
        cumulative_rows.append(
            [it.index, running] + [it.state_after[e] - initial[e] for e in elements]
        )
    _emit(
        cumulative_rows,
        ["t", "cumulativeBudget", *[f"delta_{e}" for e in elements]],
        output_dir, "game_cumulative", fmt,
    )

    write_json(
        {
            "totalSpent": result.total_spent,
            "finalIndex": result.final_index,
            "iterations": len(result.iterations),
            "termination": result.termination,
            "finalReliabilities": result.final_state,
        },
        output_dir / "game_summary.json",
    )
    click.echo(f"{result.final_index:.6f}")


@cli.command("compare")
@_network_option
@click.option("--budget", type=click.FloatRange(min=0), default=None,
              help="Budget given to both allocators; defaults to the network file's.")
@click.option("--target", type=click.FloatRange(max=1.0), default=1.0, show_default=True)
@click.option("--starts", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=None)
@_output_options
def compare_command(network_path, budget, target, starts, seed, output_dir: Path, fmt: str):
    """Run both allocators and emit a per-element side-by-side table."""
    network = _load(network_path)
    path_set = enumerate_paths(network)
    budget = _budget_for(network, budget)
    allocation = allocate_traditional(
        network, path_set, budget, _solver_config(starts, seed)
    )
    game = run_game_allocation(network, path_set, budget, target)
    output_dir.mkdir(parents=True, exist_ok=True)
    initial = network.reliabilities()
    rows = [
        [e, initial[e], allocation.resulting_state[e], game.final_state[e]]
        for e in network.element_ids
    ]
    _emit(rows, ["element", "initial", "traditional", "game"], output_dir, "compare", fmt)
    click.echo(f"traditional {allocation.achieved_index:.6f}")
    click.echo(f"game {game.final_index:.6f}")


def main(argv=None) -> int:
    """Dispatch the CLI; returns the process exit code."""
    try:
        cli.main(args=argv, prog_name="reliaforge", standalone_mode=False)
        return 0
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except (ReliaforgeError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
