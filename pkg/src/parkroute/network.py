"""Road network model: typed nodes, time-sliced edge speeds, lot availability.

The network is an undirected simple graph. Nodes are dense integer ids with a
role (start, intermediate, parking lot). Each edge carries one distance and one
speed per four-hour slot of the day; each lot carries one availability
percentage per slot. All validation happens at construction, so every network
the rest of the package touches is already consistent.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from enum import Enum
from itertools import pairwise
from pathlib import Path
from typing import Iterable, Mapping

from .errors import (
    InvalidRoute,
    NotAParkingLot,
    ParseError,
    UnknownNode,
    ValidationError,
)


class TimeSlot(Enum):
    """The six four-hour slots of a day, in clock order from midnight."""

    AM_12_4 = "12-4am"
    AM_4_8 = "4-8am"
    AM_8_12 = "8am-12pm"
    PM_12_4 = "12-4pm"
    PM_4_8 = "4-8pm"
    PM_8_12 = "8pm-12am"

    @property
    def label(self) -> str:
        return self.value

    @property
    def index(self) -> int:
        """Position in clock order, 0 for 12-4am through 5 for 8pm-12am."""
        return _SLOT_ORDER.index(self)

    @classmethod
    def from_label(cls, label: str) -> "TimeSlot":
        try:
            return cls(label)
        except ValueError:
            raise ValidationError(
                f"unknown time slot {label!r}; expected one of {', '.join(SLOT_LABELS)}"
            ) from None


_SLOT_ORDER = tuple(TimeSlot)
SLOT_LABELS = tuple(slot.value for slot in TimeSlot)


class NodeRole(Enum):
    START = "start"
    INTERMEDIATE = "intermediate"
    PARKING_LOT = "lot"


_ROLE_BY_LABEL = {role.value: role for role in NodeRole}


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _as_number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{what} must be a number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class Edge:
    """Undirected road segment with a fixed length and per-slot speeds."""

    a: int
    b: int
    distance_km: float
    speed_kmh: Mapping[TimeSlot, float]

    def __post_init__(self):
        if self.a == self.b:
            raise ValidationError(f"self loop at node {self.a}")
        if not math.isfinite(self.distance_km) or self.distance_km < 0:
            raise ValidationError(
                f"edge ({self.a},{self.b}) has negative or non-finite distance"
            )
        speeds = dict(self.speed_kmh)
        for slot in TimeSlot:
            if slot not in speeds:
                raise ValidationError(
                    f"edge ({self.a},{self.b}) speed table missing slot {slot.label!r}"
                )
        for slot, v in speeds.items():
            if not isinstance(slot, TimeSlot):
                raise ValidationError(
                    f"edge ({self.a},{self.b}) speed table has non-slot key {slot!r}"
                )
            if not math.isfinite(v) or v < 0:
                raise ValidationError(
                    f"edge ({self.a},{self.b}) has negative or non-finite speed in {slot.label}"
                )
        object.__setattr__(self, "speed_kmh", speeds)

    def speed(self, slot: TimeSlot) -> float:
        return self.speed_kmh[slot]


Route = tuple[int, ...]


def format_route(route: Iterable[int]) -> str:
    """Render a route as "[0, 4, 22]"; the inverse of parse_route."""
    return "[" + ", ".join(str(n) for n in route) + "]"


def parse_route(text: str) -> Route:
    """Parse a route rendered by format_route back into a tuple of node ids."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"route text must look like [0, 1, 2], got {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        raise ParseError("route text names no nodes")
    try:
        return tuple(int(part) for part in inner.split(","))
    except ValueError:
        raise ParseError(f"route text has a non-integer node id: {text!r}") from None


class RoadNetwork:
    """Validated road graph with start nodes, parking lots and slotted speeds.

    Construction raises ValidationError (or a subclass) naming the first
    violated invariant; instances are immutable afterwards.
    """

    def __init__(
        self,
        nodes: Mapping[int, NodeRole],
        edges: Iterable[Edge],
        availability: Mapping[int, Mapping[TimeSlot, float]],
    ):
        roles: dict[int, NodeRole] = {}
        for nid, role in dict(nodes).items():
            if isinstance(nid, bool) or not isinstance(nid, int):
                raise ValidationError(f"node id {nid!r} is not an integer")
            if not isinstance(role, NodeRole):
                raise ValidationError(f"node {nid} has unknown role {role!r}")
            roles[nid] = role
        n = len(roles)
        if set(roles) != set(range(n)):
            raise ValidationError(f"node ids must be exactly 0..{n - 1}")

        starts = tuple(sorted(i for i, r in roles.items() if r is NodeRole.START))
        lots = tuple(sorted(i for i, r in roles.items() if r is NodeRole.PARKING_LOT))
        if not starts:
            raise ValidationError("network has no start node")
        if not lots:
            raise ValidationError("network has no parking lot")

        adj: dict[int, dict[int, Edge]] = {i: {} for i in range(n)}
        canonical: dict[tuple[int, int], Edge] = {}
        for edge in edges:
            if not isinstance(edge, Edge):
                raise ValidationError(f"expected an Edge, got {edge!r}")
            for end in (edge.a, edge.b):
                if end not in roles:
                    raise UnknownNode(
                        f"edge ({edge.a},{edge.b}) references unknown node {end}"
                    )
            if edge.a > edge.b:
                edge = Edge(edge.b, edge.a, edge.distance_km, edge.speed_kmh)
            key = (edge.a, edge.b)
            if key in canonical:
                raise ValidationError(f"duplicate edge ({edge.a},{edge.b})")
            canonical[key] = edge
            adj[edge.a][edge.b] = edge
            adj[edge.b][edge.a] = edge

        avail: dict[int, dict[TimeSlot, float]] = {}
        for key, table in dict(availability).items():
            nid = key
            if isinstance(nid, bool) or not isinstance(nid, int):
                raise ValidationError(f"availability key {key!r} is not a node id")
            if nid not in roles:
                raise UnknownNode(f"availability declared for unknown node {nid}")
            if roles[nid] is not NodeRole.PARKING_LOT:
                raise NotAParkingLot(
                    f"availability declared for node {nid}, which is not a parking lot"
                )
            slot_table = dict(table)
            for slot in TimeSlot:
                if slot not in slot_table:
                    raise ValidationError(
                        f"lot {nid} availability missing slot {slot.label!r}"
                    )
            for slot, pct in slot_table.items():
                if not isinstance(slot, TimeSlot):
                    raise ValidationError(
                        f"lot {nid} availability has non-slot key {slot!r}"
                    )
                if not math.isfinite(pct) or not 0.0 <= pct <= 100.0:
                    raise ValidationError(
                        f"lot {nid} availability in {slot.label} is outside [0, 100]"
                    )
            avail[nid] = slot_table
        for lot in lots:
            if lot not in avail:
                raise ValidationError(f"missing availability table for lot {lot}")

        for start in starts:
            if not self._reaches_lot(start, adj, roles):
                raise ValidationError(
                    f"start node {start} cannot reach any parking lot"
                )

        self._roles = roles
        self._adj = adj
        self._avail = avail
        self._edges = tuple(canonical[key] for key in sorted(canonical))
        self._starts = starts
        self._lots = lots

    @staticmethod
    def _reaches_lot(start, adj, roles) -> bool:
        seen = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            if roles[node] is NodeRole.PARKING_LOT:
                return True
            for nxt in adj[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return False

    # -- node and edge accessors ------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self._roles)

    @property
    def start_nodes(self) -> tuple[int, ...]:
        return self._starts

    @property
    def lot_nodes(self) -> tuple[int, ...]:
        return self._lots

    def role(self, node: int) -> NodeRole:
        self._require_node(node)
        return self._roles[node]

    def neighbors(self, node: int) -> set[int]:
        self._require_node(node)
        return set(self._adj[node])

    def has_edge(self, a: int, b: int) -> bool:
        self._require_node(a)
        self._require_node(b)
        return b in self._adj[a]

    def edges(self) -> tuple[Edge, ...]:
        """Every edge once, ordered by its (low, high) endpoint pair."""
        return self._edges

    def distance(self, a: int, b: int) -> float:
        return self._edge(a, b).distance_km

    def speed(self, a: int, b: int, slot: TimeSlot) -> float:
        return self._edge(a, b).speed_kmh[slot]

    def lot_availability(self, lot: int, slot: TimeSlot) -> float:
        self._require_node(lot)
        if self._roles[lot] is not NodeRole.PARKING_LOT:
            raise NotAParkingLot(f"node {lot} is not a parking lot")
        return self._avail[lot][slot]

    def _require_node(self, node: int):
        if node not in self._roles:
            raise UnknownNode(f"no node {node} in network")

    def _edge(self, a: int, b: int) -> Edge:
        self._require_node(a)
        self._require_node(b)
        edge = self._adj[a].get(b)
        if edge is None:
            raise ValidationError(f"no edge between {a} and {b}")
        return edge

    # -- routes -------------------------------------------------------------

    def is_valid_route(self, route: Iterable[int]) -> bool:
        try:
            self.check_route(route)
        except ValidationError:
            return False
        return True

    def check_route(self, route: Iterable[int]) -> Route:
        """Return the route as a tuple, or raise InvalidRoute saying why not.

        A route starts at a start node, ends at a parking lot, repeats no node
        and follows existing edges. Interior nodes may have any role.
        """
        nodes = tuple(route)
        if len(nodes) < 2:
            raise InvalidRoute("route needs at least two nodes")
        for node in nodes:
            if node not in self._roles:
                raise InvalidRoute(f"route uses unknown node {node}")
        if self._roles[nodes[0]] is not NodeRole.START:
            raise InvalidRoute(f"route begins at {nodes[0]}, which is not a start node")
        if self._roles[nodes[-1]] is not NodeRole.PARKING_LOT:
            raise InvalidRoute(f"route ends at {nodes[-1]}, which is not a parking lot")
        if len(set(nodes)) != len(nodes):
            raise InvalidRoute("route revisits a node")
        for a, b in pairwise(nodes):
            if b not in self._adj[a]:
                raise InvalidRoute(f"route uses missing edge ({a},{b})")
        return nodes

    def route_distance(self, route: Iterable[int], *, validate: bool = True) -> float:
        """Total length in km of the route's edges."""
        nodes = self.check_route(route) if validate else tuple(route)
        return sum(self._adj[a][b].distance_km for a, b in pairwise(nodes))

    def route_speed_sum(
        self, route: Iterable[int], slot: TimeSlot, *, validate: bool = True
    ) -> float:
        """Sum of the route's edge speeds in the given slot."""
        nodes = self.check_route(route) if validate else tuple(route)
        return sum(self._adj[a][b].speed_kmh[slot] for a, b in pairwise(nodes))

    # -- serialization --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {"id": i, "role": self._roles[i].value} for i in range(self.node_count)
            ],
            "edges": [
                {
                    "a": e.a,
                    "b": e.b,
                    "distance_km": e.distance_km,
                    "speed_kmh": {slot.value: e.speed_kmh[slot] for slot in TimeSlot},
                }
                for e in self._edges
            ],
            "availability_pct": {
                str(lot): {slot.value: self._avail[lot][slot] for slot in TimeSlot}
                for lot in self._lots
            },
        }


def _require_mapping(obj, what: str) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object, got {type(obj).__name__}")
    return obj


def _require_list(obj, what: str) -> list:
    if not isinstance(obj, list):
        raise ParseError(f"{what} must be a JSON array, got {type(obj).__name__}")
    return obj


def _check_keys(obj: dict, required: set[str], what: str):
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"{what} missing key {sorted(missing)[0]!r}")
    unknown = obj.keys() - required
    if unknown:
        raise ParseError(f"{what} has unknown key {sorted(unknown)[0]!r}")


def _slot_table(obj, what: str) -> dict[TimeSlot, float]:
    table = _require_mapping(obj, what)
    out = {}
    for label, value in table.items():
        slot = TimeSlot.from_label(label)
        out[slot] = _as_number(value, f"{what}[{label!r}]")
    return out


def network_from_dict(raw) -> RoadNetwork:
    """Build a RoadNetwork from parsed JSON, rejecting unknown keys."""
    top = _require_mapping(raw, "network")
    _check_keys(top, {"nodes", "edges", "availability_pct"}, "network")

    nodes: dict[int, NodeRole] = {}
    for item in _require_list(top["nodes"], "nodes"):
        entry = _require_mapping(item, "node entry")
        _check_keys(entry, {"id", "role"}, "node entry")
        nid = _as_int(entry["id"], "node id")
        label = entry["role"]
        if label not in _ROLE_BY_LABEL:
            raise ValidationError(f"node {nid} has unknown role {label!r}")
        if nid in nodes:
            raise ValidationError(f"duplicate node id {nid}")
        nodes[nid] = _ROLE_BY_LABEL[label]

    edges = []
    for item in _require_list(top["edges"], "edges"):
        entry = _require_mapping(item, "edge entry")
        _check_keys(entry, {"a", "b", "distance_km", "speed_kmh"}, "edge entry")
        a = _as_int(entry["a"], "edge endpoint a")
        b = _as_int(entry["b"], "edge endpoint b")
        edges.append(
            Edge(
                a,
                b,
                _as_number(entry["distance_km"], f"edge ({a},{b}) distance_km"),
                _slot_table(entry["speed_kmh"], f"edge ({a},{b}) speed_kmh"),
            )
        )

    availability: dict[int, dict[TimeSlot, float]] = {}
    for key, table in _require_mapping(
        top["availability_pct"], "availability_pct"
    ).items():
        try:
            lot = int(key)
        except (TypeError, ValueError):
            raise ParseError(f"availability key {key!r} is not an integer node id") from None
        availability[lot] = _slot_table(table, f"availability_pct[{key!r}]")

    return RoadNetwork(nodes, edges, availability)


def parse_network(text: str) -> RoadNetwork:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"network file is not valid JSON: {exc}") from exc
    return network_from_dict(raw)


def load_network(path) -> RoadNetwork:
    """Read and validate a network JSON file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read network file {path}: {exc}") from exc
    return parse_network(text)


def dumps_network(net: RoadNetwork) -> str:
    return json.dumps(net.to_json_dict(), indent=2) + "\n"


def save_network(net: RoadNetwork, path):
    Path(path).write_text(dumps_network(net))


# Routes that are traversable in every generated network: the generator always
# includes each consecutive pair below in its edge set, whatever the seed.
# Demos, docs and tests lean on them for stable worked examples.
SEED_ROUTES: tuple[Route, ...] = (
    (0, 4, 22, 14, 13, 11, 26, 21, 28),
    (0, 4, 22, 13, 11, 2, 29),
    (0, 3, 4, 22, 13, 25, 20, 28),
    (0, 5, 22, 13, 11, 2, 29),
    (0, 7, 4, 22, 13, 25, 20, 28),
    (0, 5, 22, 13, 11, 2, 17, 21, 28),
    (0, 5, 22, 15, 25, 26, 2, 19, 30),
    (0, 6, 22, 15, 25, 20, 18, 28),
    (0, 8, 7, 23, 3, 6, 22, 13, 25, 11, 2, 29),
    (0, 4, 22, 14, 13, 25, 11, 26, 2, 19, 17, 20, 18, 28),
    (0, 7, 4, 6, 22, 13, 1, 11, 2, 17, 21, 28),
    (0, 3, 6, 22, 15, 1, 11, 26, 21, 28),
    (0, 6, 22, 15, 1, 11, 26, 21, 28),
    (0, 3, 6, 22, 15, 25, 20, 18, 28),
    (0, 4, 6, 22, 15, 25, 20, 18, 28),
)

_N_NODES = 31
_START_NODES = (0, 1)
_LOT_NODES = (28, 29, 30)

# Speeds dip in the morning rush and late afternoon; lots fill up over the day
# and drain again in the evening.
_SPEED_FACTOR = {
    TimeSlot.AM_12_4: 1.00,
    TimeSlot.AM_4_8: 0.90,
    TimeSlot.AM_8_12: 0.60,
    TimeSlot.PM_12_4: 0.70,
    TimeSlot.PM_4_8: 0.55,
    TimeSlot.PM_8_12: 0.85,
}
_AVAIL_FACTOR = {
    TimeSlot.AM_12_4: 0.95,
    TimeSlot.AM_4_8: 1.00,
    TimeSlot.AM_8_12: 0.55,
    TimeSlot.PM_12_4: 0.40,
    TimeSlot.PM_4_8: 0.50,
    TimeSlot.PM_8_12: 0.80,
}


def generate_example_network(seed: int) -> RoadNetwork:
    """Build the 31-node demo city, reproducibly from a seed.

    Every network this returns contains the edges of SEED_ROUTES; the seed
    only varies the filler edges and the distance/speed/availability figures.
    Filler never touches nodes 0 and 6, so their neighborhoods are identical
    across seeds and walk-by-hand examples built on them stay stable.
    """
    rng = random.Random(seed)
    roles = {i: NodeRole.INTERMEDIATE for i in range(_N_NODES)}
    for i in _START_NODES:
        roles[i] = NodeRole.START
    for i in _LOT_NODES:
        roles[i] = NodeRole.PARKING_LOT

    pairs: set[tuple[int, int]] = set()
    for route in SEED_ROUTES:
        for a, b in pairwise(route):
            pairs.add((min(a, b), max(a, b)))

    degree: dict[int, int] = {i: 0 for i in range(_N_NODES)}
    for a, b in pairs:
        degree[a] += 1
        degree[b] += 1

    pool = [i for i in range(_N_NODES) if i not in (0, 6)]
    for node in pool:
        while degree[node] < 2:
            options = [
                x
                for x in pool
                if x != node and (min(node, x), max(node, x)) not in pairs
            ]
            other = rng.choice(options)
            pairs.add((min(node, other), max(node, other)))
            degree[node] += 1
            degree[other] += 1
    for _ in range(8):
        a, b = rng.sample(pool, 2)
        key = (min(a, b), max(a, b))
        if key not in pairs:
            pairs.add(key)

    edges = []
    for a, b in sorted(pairs):
        base_speed = rng.uniform(35.0, 65.0)
        speeds = {
            slot: round(base_speed * _SPEED_FACTOR[slot] * rng.uniform(0.95, 1.05), 1)
            for slot in TimeSlot
        }
        edges.append(Edge(a, b, round(rng.uniform(0.4, 4.5), 2), speeds))

    availability = {}
    for lot in _LOT_NODES:
        base = rng.uniform(55.0, 95.0)
        availability[lot] = {
            slot: round(
                min(100.0, base * _AVAIL_FACTOR[slot] * rng.uniform(0.9, 1.1)), 1
            )
            for slot in TimeSlot
        }

    return RoadNetwork(roles, edges, availability)
