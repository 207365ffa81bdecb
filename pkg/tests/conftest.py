"""Shared fixtures and small network builders used across the test suite."""
import random

import pytest

from parkroute import datasets
from parkroute.network import Edge, NodeRole, RoadNetwork, TimeSlot

ROLE_BY_NAME = {
    "start": NodeRole.START,
    "mid": NodeRole.INTERMEDIATE,
    "lot": NodeRole.PARKING_LOT,
}


def flat_speeds(value):
    """The same speed in every slot."""
    return {slot: float(value) for slot in TimeSlot}


def build_network(roles, edges, availability=None, speed=50.0, avail=50.0):
    """Compact constructor for hand-built test networks.

    roles: {id: "start" | "mid" | "lot"}
    edges: {(a, b): dist} or {(a, b): (dist, speed)} or {(a, b): (dist, {slot: speed})}
    availability: {lot: pct} or {lot: {slot: pct}}; lots not named get `avail` flat
    """
    typed = {i: ROLE_BY_NAME[r] for i, r in roles.items()}
    edge_objs = []
    for (a, b), value in edges.items():
        if isinstance(value, tuple):
            dist, sp = value
            table = dict(sp) if isinstance(sp, dict) else flat_speeds(sp)
        else:
            dist, table = value, flat_speeds(speed)
        edge_objs.append(Edge(a, b, float(dist), table))
    availability = availability or {}
    av = {}
    for lot, role in roles.items():
        if role != "lot":
            continue
        spec = availability.get(lot, avail)
        av[lot] = dict(spec) if isinstance(spec, dict) else flat_speeds(spec)
    return RoadNetwork(typed, edge_objs, av)


def make_toy_network(seed):
    """Random connected network of 5-8 nodes: node 0 starts, the tail nodes park.

    Small enough for exhaustive enumeration, varied enough (random extra
    edges, speeds, availability) to exercise the optimizer.
    """
    rng = random.Random(seed)
    n = rng.randint(5, 8)
    roles = {i: NodeRole.INTERMEDIATE for i in range(n)}
    roles[0] = NodeRole.START
    lots = [n - 1] if n < 7 else [n - 1, n - 2]
    for lot in lots:
        roles[lot] = NodeRole.PARKING_LOT
    pairs = set()
    for i in range(1, n):
        j = rng.randrange(i)
        pairs.add((j, i))
    for _ in range(rng.randint(1, n)):
        a, b = rng.sample(range(n), 2)
        pairs.add((min(a, b), max(a, b)))
    edges = []
    for a, b in sorted(pairs):
        base = rng.uniform(30.0, 70.0)
        speeds = {s: round(base * rng.uniform(0.5, 1.1), 1) for s in TimeSlot}
        edges.append(Edge(a, b, round(rng.uniform(0.5, 5.0), 2), speeds))
    availability = {
        lot: {s: round(rng.uniform(5.0, 95.0), 1) for s in TimeSlot} for lot in lots
    }
    return RoadNetwork(roles, edges, availability)


@pytest.fixture(scope="session")
def city31():
    return datasets.load_city31()


@pytest.fixture(scope="session")
def default_weights():
    return datasets.load_default_weights()


@pytest.fixture(scope="session")
def survey50():
    return datasets.load_survey50()
