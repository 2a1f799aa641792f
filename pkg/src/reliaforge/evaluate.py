"""Reliability evaluation: per-path, per-OD, system index, gradient, exact oracle.

Per-OD reliability treats the OD's simple paths as a parallel combination,
R = 1 - prod(1 - p), with p the product of element reliabilities along a
path.  Paths sharing elements are NOT independent, so this is a convention
rather than the exact connectivity probability; ``exact_od_reliability``
provides the exact value by state enumeration for diagnostics.  The system
index is the mean of all OD reliabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .arrays import PathArrays, build_arrays
from .errors import EnumerationError, StateError
from .model import Network, ODPair
from .paths import Path, PathSet, enumerate_paths

EXACT_ENUMERATION_LIMIT = 25


@dataclass(frozen=True)
class Evaluation:
    """Full snapshot: path reliabilities, OD reliabilities, and their mean."""

    path_reliabilities: dict[ODPair, tuple[float, ...]]
    od_reliabilities: dict[ODPair, float]
    system_index: float


def initial_state(network: Network) -> dict[str, float]:
    """The network's as-built reliabilities keyed by element id."""
    return network.reliabilities()


def path_reliability(path: Path, state: Mapping[str, float]) -> float:
    """Product of the reliabilities of the path's elements."""
    value = 1.0
    for element in path.elements:
        if element not in state:
            raise StateError(f"unknown element id '{element}'")
        value *= state[element]
    return value


def od_reliability(paths: Iterable[Path], state: Mapping[str, float]) -> float:
    """Parallel combination of the paths of one OD pair; empty list -> 0."""
    paths = list(paths)
    if not paths:
        return 0.0
    ods = {p.od for p in paths}
    if len(ods) > 1:
        raise ValueError(f"paths span multiple OD pairs: {sorted(ods)}")
    survive = 1.0
    for path in paths:
        survive *= 1.0 - path_reliability(path, state)
    return 1.0 - survive


def system_reliability(
    network: Network,
    path_set: PathSet,
    state: Mapping[str, float] | None = None,
    arrays: PathArrays | None = None,
) -> Evaluation:
    """Evaluate every path, every OD pair, and the system index."""
    if arrays is None:
        arrays = build_arrays(network, path_set)
    r = arrays.base_reliability if state is None else arrays.state_vector(state)
    products = kernels.path_products(r, arrays.path_ptr, arrays.path_elems)
    values = kernels.od_values(products, arrays.od_ptr)
    path_rel: dict[ODPair, tuple[float, ...]] = {}
    od_rel: dict[ODPair, float] = {}
    for i, od in enumerate(arrays.od_pairs):
        a, b = arrays.od_ptr[i], arrays.od_ptr[i + 1]
        path_rel[od] = tuple(float(v) for v in products[a:b])
        od_rel[od] = float(values[i])
    return Evaluation(
        path_reliabilities=path_rel,
        od_reliabilities=od_rel,
        system_index=float(values.mean()),
    )


def system_gradient(
    network: Network,
    path_set: PathSet,
    state: Mapping[str, float] | None = None,
    arrays: PathArrays | None = None,
) -> dict[str, float]:
    """Exact partial derivative of the system index w.r.t. each element reliability."""
    if arrays is None:
        arrays = build_arrays(network, path_set)
    r = arrays.base_reliability if state is None else arrays.state_vector(state)
    grad = kernels.system_gradient(
        r, arrays.path_ptr, arrays.path_elems, arrays.od_ptr, arrays.n_elements
    )
    return arrays.state_dict(grad)


def exact_od_reliability(
    network: Network,
    od: ODPair,
    state: Mapping[str, float] | None = None,
    path_set: PathSet | None = None,
) -> float:
    """Exact two-terminal connectivity probability by 2^|E| state enumeration.

    Elements fail independently; the OD is up when some path is fully up.
    Diagnostic only: quantifies the error of the parallel-combination
    convention when paths share elements.
    """
    n_elements = len(network.element_ids)
    if n_elements > EXACT_ENUMERATION_LIMIT:
        raise EnumerationError(
            f"{n_elements} elements exceed the {EXACT_ENUMERATION_LIMIT}-element "
            "enumeration limit"
        )
    if path_set is None:
        path_set = enumerate_paths(network)
    if od not in path_set:
        raise ValueError(f"unknown OD pair {od}")
    arrays = build_arrays(network, path_set)
    r = arrays.base_reliability if state is None else arrays.state_vector(state)

    # Only elements on some path of this OD affect the up/down indicator;
    # the rest marginalize out, so enumerate the relevant subset.
    paths = path_set[od]
    if not paths:
        return 0.0
    relevant = sorted({arrays.index[e] for p in paths for e in p.elements})
    local = {g: i for i, g in enumerate(relevant)}
    ptr = [0]
    elems: list[int] = []
    for p in paths:
        elems.extend(local[arrays.index[e]] for e in p.elements)
        ptr.append(len(elems))
    return float(
        kernels.exact_up_probability(
            r[np.asarray(relevant, dtype=np.int64)],
            np.asarray(ptr, dtype=np.int64),
            np.asarray(elems, dtype=np.int64),
        )
    )
