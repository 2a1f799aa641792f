"""Simple-path enumeration between every generator bus and load bus.

Depth-first search over buses with a visited set; a path is simple when no
bus repeats.  Parallel lines between the same bus pair yield one path per
line.  Enumeration is exponential in the worst case, so a per-OD cap guards
against runaway networks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PathLimitError
from .model import Network, ODPair

DEFAULT_PATH_CAP = 100_000


@dataclass(frozen=True)
class Path:
    """One simple route: the origin generator followed by the traversed lines.

    A zero-line path (single bus) is valid exactly when the generator and the
    load share a bus; its only element is the generator itself.
    """

    od: ODPair
    buses: tuple[str, ...]
    elements: tuple[str, ...]


PathSet = dict[ODPair, tuple[Path, ...]]


def enumerate_paths(network: Network, max_paths_per_od: int = DEFAULT_PATH_CAP) -> PathSet:
    """All simple paths for every OD pair, ordered lexicographically by bus sequence.

    Pure and deterministic; an unreachable destination yields an empty tuple.
    Raises PathLimitError when one OD pair exceeds ``max_paths_per_od``.
    """
    adjacency: dict[str, list[tuple[str, str]]] = {bus: [] for bus in network.buses}
    for line in network.lines:
        adjacency[line.bus_a].append((line.bus_b, line.id))
        adjacency[line.bus_b].append((line.bus_a, line.id))

    result: PathSet = {}
    for od in network.od_pairs():
        origin_bus = network.generator_bus(od.origin)
        target_bus = network.load_bus(od.destination)
        found: list[tuple[tuple[str, ...], tuple[str, ...]]] = []

        def walk(bus: str, trail: list[str], lines: list[str], visited: set[str]):
            if bus == target_bus:
                found.append((tuple(trail), tuple(lines)))
                if len(found) > max_paths_per_od:
                    raise PathLimitError(
                        f"more than {max_paths_per_od} paths for OD "
                        f"{od.origin}->{od.destination}"
                    )
                return
            for neighbor, line_id in adjacency[bus]:
                if neighbor in visited:
                    continue
                visited.add(neighbor)
                trail.append(neighbor)
                lines.append(line_id)
                walk(neighbor, trail, lines, visited)
                lines.pop()
                trail.pop()
                visited.remove(neighbor)

        walk(origin_bus, [origin_bus], [], {origin_bus})
        found.sort()
        result[od] = tuple(
            Path(od=od, buses=buses, elements=(od.origin,) + lines)
            for buses, lines in found
        )
    return result


def path_counts(path_set: PathSet) -> dict[ODPair, int]:
    """Number of simple paths per OD pair."""
    return {od: len(paths) for od, paths in path_set.items()}
