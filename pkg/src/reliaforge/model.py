"""Network data model: buses, generators, lines, loads, and the JSON interchange format.

A network is a reliability graph.  Generators and lines are the failing
elements; each carries a reliability (probability of being up) and a unit
cost of improving that reliability.  Loads sit on buses and have no
reliability of their own.  Every (generator, load) combination is an
origin-destination (OD) pair.

Networks are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import NetworkError

GENERATOR_COST = 2.0
LINE_COST = 1.0


class ODPair(NamedTuple):
    origin: str
    destination: str


@dataclass(frozen=True)
class Generator:
    id: str
    bus: str
    reliability: float
    cost: float = GENERATOR_COST


@dataclass(frozen=True)
class Line:
    """Undirected connection between two buses; (a, b) and (b, a) are the same line."""

    id: str
    bus_a: str
    bus_b: str
    reliability: float
    cost: float = LINE_COST


@dataclass(frozen=True)
class Load:
    id: str
    bus: str


@dataclass(frozen=True)
class Network:
    buses: tuple[str, ...]
    generators: tuple[Generator, ...]
    lines: tuple[Line, ...]
    loads: tuple[Load, ...]
    budget: float = 0.0

    def __post_init__(self):
        bus_set = set(self.buses)
        if len(bus_set) != len(self.buses):
            raise NetworkError("duplicate bus id")
        if not self.generators:
            raise NetworkError("network needs at least one generator")
        if not self.loads:
            raise NetworkError("network needs at least one load")
        if self.budget < 0:
            raise NetworkError("budget must be nonnegative")
        seen: set[str] = set()
        for gen in self.generators:
            _check_element(gen.id, gen.reliability, gen.cost, seen)
            if gen.bus not in bus_set:
                raise NetworkError(f"generator '{gen.id}' references unknown bus '{gen.bus}'")
        for line in self.lines:
            _check_element(line.id, line.reliability, line.cost, seen)
            for bus in (line.bus_a, line.bus_b):
                if bus not in bus_set:
                    raise NetworkError(f"line '{line.id}' references unknown bus '{bus}'")
        load_ids: set[str] = set()
        for load in self.loads:
            if load.id in load_ids:
                raise NetworkError(f"duplicate load id '{load.id}'")
            load_ids.add(load.id)
            if load.bus not in bus_set:
                raise NetworkError(f"load '{load.id}' references unknown bus '{load.bus}'")

    @property
    def element_ids(self) -> tuple[str, ...]:
        """Canonical element order: generators first, then lines, as listed."""
        return tuple(g.id for g in self.generators) + tuple(l.id for l in self.lines)

    def reliabilities(self) -> dict[str, float]:
        """Initial reliability of every element."""
        out = {g.id: g.reliability for g in self.generators}
        out.update({l.id: l.reliability for l in self.lines})
        return out

    def costs(self) -> dict[str, float]:
        out = {g.id: g.cost for g in self.generators}
        out.update({l.id: l.cost for l in self.lines})
        return out

    def od_pairs(self) -> tuple[ODPair, ...]:
        """All generator x load combinations, in listed order."""
        return tuple(
            ODPair(g.id, load.id) for g in self.generators for load in self.loads
        )

    def generator_bus(self, generator_id: str) -> str:
        for g in self.generators:
            if g.id == generator_id:
                return g.bus
        raise NetworkError(f"unknown generator '{generator_id}'")

    def load_bus(self, load_id: str) -> str:
        for load in self.loads:
            if load.id == load_id:
                return load.bus
        raise NetworkError(f"unknown load '{load_id}'")


def _check_element(element_id: str, reliability: float, cost: float, seen: set[str]):
    if element_id in seen:
        raise NetworkError(f"duplicate element id '{element_id}'")
    seen.add(element_id)
    if not 0.0 <= reliability <= 1.0:
        raise NetworkError(f"element '{element_id}' reliability {reliability} outside [0, 1]")
    if not cost > 0.0:
        raise NetworkError(f"element '{element_id}' cost {cost} must be positive")


_TOP_KEYS = {"buses", "generators", "lines", "loads", "budget"}
_GENERATOR_KEYS = {"id", "bus", "reliability", "cost"}
_LINE_KEYS = {"id", "from", "to", "reliability", "cost"}
_LOAD_KEYS = {"id", "bus"}


def parse_network(text: str) -> Network:
    """Parse a UTF-8 JSON network document (strict: unknown keys are an error)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise NetworkError("top level must be a JSON object")
    _reject_unknown(doc, _TOP_KEYS, "document")
    for key in ("buses", "generators", "lines", "loads"):
        if key not in doc:
            raise NetworkError(f"missing required key '{key}'")
        if not isinstance(doc[key], list):
            raise NetworkError(f"'{key}' must be an array")

    buses = tuple(_require_str(b, "bus id") for b in doc["buses"])
    generators = []
    for rec in doc["generators"]:
        _require_record(rec, _GENERATOR_KEYS, {"id", "bus", "reliability"}, "generator")
        generators.append(
            Generator(
                id=_require_str(rec["id"], "generator id"),
                bus=_require_str(rec["bus"], "generator bus"),
                reliability=_require_num(rec["reliability"], "generator reliability"),
                cost=_require_num(rec.get("cost", GENERATOR_COST), "generator cost"),
            )
        )
    lines = []
    for rec in doc["lines"]:
        _require_record(rec, _LINE_KEYS, {"id", "from", "to", "reliability"}, "line")
        lines.append(
            Line(
                id=_require_str(rec["id"], "line id"),
                bus_a=_require_str(rec["from"], "line endpoint"),
                bus_b=_require_str(rec["to"], "line endpoint"),
                reliability=_require_num(rec["reliability"], "line reliability"),
                cost=_require_num(rec.get("cost", LINE_COST), "line cost"),
            )
        )
    loads = []
    for rec in doc["loads"]:
        _require_record(rec, _LOAD_KEYS, {"id", "bus"}, "load")
        loads.append(Load(id=_require_str(rec["id"], "load id"), bus=_require_str(rec["bus"], "load bus")))

    budget = _require_num(doc.get("budget", 0.0), "budget")
    return Network(
        buses=buses,
        generators=tuple(generators),
        lines=tuple(lines),
        loads=tuple(loads),
        budget=budget,
    )


def serialize_network(network: Network) -> str:
    """Emit the JSON document form; parse_network(serialize_network(n)) == n."""
    doc = {
        "buses": list(network.buses),
        "generators": [
            {"id": g.id, "bus": g.bus, "reliability": g.reliability, "cost": g.cost}
            for g in network.generators
        ],
        "lines": [
            {"id": l.id, "from": l.bus_a, "to": l.bus_b, "reliability": l.reliability, "cost": l.cost}
            for l in network.lines
        ],
        "loads": [{"id": load.id, "bus": load.bus} for load in network.loads],
        "budget": network.budget,
    }
    return json.dumps(doc, indent=2) + "\n"


def load_network(path) -> Network:
    """Read and parse a network file."""
    with open(path, encoding="utf-8") as handle:
        return parse_network(handle.read())


def _reject_unknown(record: dict, allowed: set[str], what: str):
    unknown = set(record) - allowed
    if unknown:
        raise NetworkError(f"unknown key(s) in {what}: {', '.join(sorted(unknown))}")


def _require_record(rec, allowed: set[str], required: set[str], what: str) -> None:
    if not isinstance(rec, dict):
        raise NetworkError(f"each {what} must be an object")
    _reject_unknown(rec, allowed, what)
    missing = required - set(rec)
    if missing:
        raise NetworkError(f"{what} missing key(s): {', '.join(sorted(missing))}")


def _require_str(value, what: str) -> str:
    if not isinstance(value, str) or not value:
        raise NetworkError(f"{what} must be a nonempty string, got {value!r}")
    return value


def _require_num(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise NetworkError(f"{what} must be a number, got {value!r}")
    return float(value)


def rtbs_network() -> Network:
    """The modified RTBS benchmark: 6 buses, 2 generators, 7 lines, 4 loads.

    Line topology is reconstructed so that every published per-path
    reliability product is reproduced by the element reliabilities below;
    the test suite re-derives all 24 products as a permanent cross-check.
    """
    return Network(
        buses=("1", "2", "3", "4", "5", "6"),
        generators=(
            Generator("g1", "1", 0.91),
            Generator("g2", "2", 0.85),
        ),
        lines=(
            Line("r1", "1", "3", 0.897),
            Line("r2", "2", "4", 0.797),
            Line("r3", "1", "2", 0.805),
            Line("r4", "3", "4", 0.909),
            Line("r5", "3", "5", 0.966),
            Line("r6", "4", "5", 0.617),
            Line("r7", "5", "6", 0.9),
        ),
        loads=(
            Load("L1", "2"),
            Load("L2", "3"),
            Load("L3", "4"),
            Load("L4", "6"),
        ),
        budget=1.0,
    )
