"""Route scoring: three objectives folded into one weighted scalar fitness.

A route is judged on total distance (shorter is better), summed edge speed in
the active time slot (faster is better) and the availability of its terminal
lot (emptier is better). Each raw value is normalized to [0, 1] against
network-wide bounds and the three terms are combined with convex weights, so
fitness lives in [0, 1] and lower is better.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import DegenerateBounds, EmptyNetwork, ParseError, ValidationError
from .network import RoadNetwork, Route, TimeSlot


@dataclass(frozen=True)
class WeightVector:
    """Convex weights over the three objectives; must sum to 1."""

    distance: float
    speed: float
    availability: float

    def __post_init__(self):
        for name, w in (
            ("distance", self.distance),
            ("speed", self.speed),
            ("availability", self.availability),
        ):
            if not math.isfinite(w) or w < 0.0:
                raise ValidationError(f"weight {name!r} must be finite and >= 0")
        if abs(self.distance + self.speed + self.availability - 1.0) > 1e-9:
            raise ValidationError("weights must sum to 1 within 1e-9")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.distance, self.speed, self.availability)


def load_weights(path) -> WeightVector:
    """Read a weight vector from JSON: {"distance": .., "speed": .., "availability": ..}."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read weights file {path}: {exc}") from exc
    return parse_weights(text)


def parse_weights(text: str) -> WeightVector:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"weights file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("weights file must be a JSON object")
    expected = {"distance", "speed", "availability"}
    missing = expected - raw.keys()
    if missing:
        raise ParseError(f"weights file missing key {sorted(missing)[0]!r}")
    unknown = raw.keys() - expected
    if unknown:
        raise ParseError(f"weights file has unknown key {sorted(unknown)[0]!r}")
    values = {}
    for key in expected:
        v = raw[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"weight {key!r} must be a number, got {v!r}")
        values[key] = float(v)
    return WeightVector(**values)


@dataclass(frozen=True)
class ObjectiveBounds:
    """Normalization intervals for raw distance, speed sum and availability."""

    distance: tuple[float, float]
    speed_sum: tuple[float, float]
    availability: tuple[float, float] = (0.0, 100.0)

    def __post_init__(self):
        for name, (lo, hi) in (
            ("distance", self.distance),
            ("speed_sum", self.speed_sum),
            ("availability", self.availability),
        ):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise DegenerateBounds(f"{name} bounds must be finite")
            if hi <= lo:
                raise DegenerateBounds(f"{name} bounds ({lo}, {hi}) have no width")


def normalize(x: float, lower: float, upper: float) -> float:
    """Map x linearly so lower -> 0 and upper -> 1, clamping outside the interval."""
    if upper <= lower:
        raise DegenerateBounds(f"bounds ({lower}, {upper}) have no width")
    scaled = (x - lower) / (upper - lower)
    return min(1.0, max(0.0, scaled))


def compute_bounds(net: RoadNetwork) -> ObjectiveBounds:
    """Loose network-wide bounds covering every possible route.

    No simple route can be longer than all edges laid end to end, nor sum more
    speed than every edge at its fastest slot, so (0, total) bounds both.
    """
    edges = net.edges()
    if not edges:
        raise EmptyNetwork("cannot compute bounds for a network with no edges")
    total_distance = sum(e.distance_km for e in edges)
    total_speed = sum(max(e.speed_kmh.values()) for e in edges)
    return ObjectiveBounds((0.0, total_distance), (0.0, total_speed))


def objective_distance(net: RoadNetwork, route) -> float:
    """Total route length in km; minimized as-is."""
    return net.route_distance(route)


def objective_speed(net: RoadNetwork, route, slot: TimeSlot) -> float:
    """Negated sum of edge speeds in the slot, so minimizing favors fast roads."""
    return -net.route_speed_sum(route, slot)


def objective_availability(net: RoadNetwork, route, slot: TimeSlot) -> float:
    """Negated availability of the terminal lot, so minimizing favors empty lots."""
    nodes = net.check_route(route)
    return -net.lot_availability(nodes[-1], slot)


def fitness(
    net: RoadNetwork,
    route,
    slot: TimeSlot,
    weights: WeightVector,
    bounds: ObjectiveBounds,
) -> float:
    """Weighted sum of the normalized objectives; lower is better.

    fitness = w_d * nd + w_s * (1 - ns) + w_a * (1 - na), where nd, ns, na are
    the route's distance, speed sum and terminal availability normalized to
    [0, 1]. Speed and availability enter reversed because large raw values are
    good.
    """
    nodes = net.check_route(route)
    nd = normalize(net.route_distance(nodes, validate=False), *bounds.distance)
    ns = normalize(net.route_speed_sum(nodes, slot, validate=False), *bounds.speed_sum)
    na = normalize(net.lot_availability(nodes[-1], slot), *bounds.availability)
    return weights.distance * nd + weights.speed * (1.0 - ns) + weights.availability * (1.0 - na)
