"""Flat array views of a network + path set for the numeric kernels.

Paths are stored in CSR form: ``path_elems[path_ptr[p]:path_ptr[p+1]]`` holds
the element indices of path p, and paths are grouped per OD pair through
``od_ptr``.  Element order is the network's canonical order (generators then
lines).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import StateError
from .model import Network, ODPair
from .paths import PathSet


@dataclass(frozen=True)
class PathArrays:
    element_ids: tuple[str, ...]
    index: dict[str, int]
    base_reliability: np.ndarray
    cost: np.ndarray
    od_pairs: tuple[ODPair, ...]
    od_ptr: np.ndarray
    path_ptr: np.ndarray
    path_elems: np.ndarray

    @property
    def n_elements(self) -> int:
        return len(self.element_ids)

    @property
    def n_paths(self) -> int:
        return len(self.path_ptr) - 1

    def state_vector(self, state: Mapping[str, float]) -> np.ndarray:
        """Dense reliability vector; the state must cover every element exactly."""
        extra = set(state) - set(self.element_ids)
        if extra:
            raise StateError(f"unknown element id(s): {', '.join(sorted(extra))}")
        missing = set(self.element_ids) - set(state)
        if missing:
            raise StateError(f"state missing element(s): {', '.join(sorted(missing))}")
        return np.array([state[e] for e in self.element_ids], dtype=np.float64)

    def state_dict(self, r: np.ndarray) -> dict[str, float]:
        return {e: float(r[i]) for i, e in enumerate(self.element_ids)}


def build_arrays(network: Network, path_set: PathSet) -> PathArrays:
    element_ids = network.element_ids
    index = {e: i for i, e in enumerate(element_ids)}
    reliabilities = network.reliabilities()
    costs = network.costs()

    od_pairs = network.od_pairs()
    od_ptr = [0]
    path_ptr = [0]
    path_elems: list[int] = []
    for od in od_pairs:
        for path in path_set[od]:
            path_elems.extend(index[e] for e in path.elements)
            path_ptr.append(len(path_elems))
        od_ptr.append(len(path_ptr) - 1)

    return PathArrays(
        element_ids=element_ids,
        index=index,
        base_reliability=np.array([reliabilities[e] for e in element_ids]),
        cost=np.array([costs[e] for e in element_ids]),
        od_pairs=od_pairs,
        od_ptr=np.asarray(od_ptr, dtype=np.int64),
        path_ptr=np.asarray(path_ptr, dtype=np.int64),
        path_elems=np.asarray(path_elems, dtype=np.int64),
    )
