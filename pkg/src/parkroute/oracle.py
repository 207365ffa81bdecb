"""Exhaustive route enumeration: ground truth for small networks.

Depth-first search over simple paths, recording a route every time a walk
stands on a parking lot and then continuing deeper, so routes that pass
through one lot on the way to another are found too. Enumeration order is
fixed (start nodes ascending, neighbors ascending), which makes the results,
including tie-breaks, reproducible.
"""
from __future__ import annotations

from .errors import LimitExceeded
from .network import NodeRole, RoadNetwork, Route, TimeSlot
from .objectives import ObjectiveBounds, WeightVector, compute_bounds, fitness

DEFAULT_MAX_ROUTES = 200_000


def enumerate_routes(
    net: RoadNetwork,
    max_routes: int = DEFAULT_MAX_ROUTES,
    max_path_length: int | None = None,
) -> list[Route]:
    """Every simple start-to-lot route, in deterministic DFS order.

    max_path_length, when given, restricts the enumerated space to routes of
    at most that many nodes. Exceeding max_routes raises LimitExceeded rather
    than returning a silently incomplete answer.
    """
    routes: list[Route] = []
    path: list[int] = []
    visited: set[int] = set()

    def dfs(node: int):
        path.append(node)
        visited.add(node)
        if net.role(node) is NodeRole.PARKING_LOT:
            if len(routes) >= max_routes:
                raise LimitExceeded(
                    f"more than {max_routes} routes; raise max_routes or cap max_path_length"
                )
            routes.append(tuple(path))
        if max_path_length is None or len(path) < max_path_length:
            for nxt in sorted(net.neighbors(node)):
                if nxt not in visited:
                    dfs(nxt)
        visited.remove(node)
        path.pop()

    for start in net.start_nodes:
        dfs(start)
    return routes


def optimal_route(
    net: RoadNetwork,
    slot: TimeSlot,
    weights: WeightVector,
    bounds: ObjectiveBounds | None = None,
    max_routes: int = DEFAULT_MAX_ROUTES,
    max_path_length: int | None = None,
) -> tuple[Route, float]:
    """The fitness-minimal route by brute force; ties go to enumeration order."""
    if bounds is None:
        bounds = compute_bounds(net)
    best_route: Route | None = None
    best_fit = float("inf")
    for route in enumerate_routes(net, max_routes, max_path_length):
        f = fitness(net, route, slot, weights, bounds)
        if f < best_fit:
            best_route, best_fit = route, f
    assert best_route is not None  # construction guarantees a start reaches a lot
    return best_route, best_fit
