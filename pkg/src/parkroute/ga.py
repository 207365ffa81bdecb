"""Genetic search for low-fitness routes.

Chromosomes are whole routes (variable length). Selection is tournament,
crossover splices a prefix of one parent onto a suffix of the other at the
half cut, mutation nudges single genes to a neighboring detour, and the best
individuals survive unchanged.
"""
from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass, fields
from pathlib import Path
from statistics import fmean
from typing import Iterable, Mapping, Sequence

from .errors import NoRouteFound, ParseError, ValidationError
from .network import NodeRole, RoadNetwork, Route, TimeSlot, format_route
from .objectives import ObjectiveBounds, WeightVector, compute_bounds, fitness


@dataclass
class Chromosome:
    """A candidate route plus its cached fitness (None until evaluated)."""

    route: Route
    fitness: float | None = None

    def __post_init__(self):
        self.route = tuple(self.route)


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 50
    generations: int = 30
    crossover_rate: float = 0.2
    tournament_size: int = 3
    elitism_count: int = 1
    rng_seed: int = 0
    max_init_retries: int = 100

    def __post_init__(self):
        for name in ("population_size", "generations", "tournament_size",
                     "elitism_count", "rng_seed", "max_init_retries"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValidationError(f"{name} must be an integer, got {v!r}")
        if self.population_size < 1:
            raise ValidationError("population_size must be at least 1")
        if self.generations < 1:
            raise ValidationError("generations must be at least 1")
        if not isinstance(self.crossover_rate, (int, float)) or isinstance(self.crossover_rate, bool):
            raise ValidationError("crossover_rate must be a number")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValidationError("crossover_rate must be within [0, 1]")
        if self.tournament_size < 2:
            raise ValidationError("tournament_size must be at least 2")
        if not 0 <= self.elitism_count < self.population_size:
            raise ValidationError("elitism_count must be in [0, population_size)")
        if self.max_init_retries < 1:
            raise ValidationError("max_init_retries must be at least 1")

    @classmethod
    def from_dict(cls, raw: Mapping) -> "GAConfig":
        known = {f.name for f in fields(cls)}
        unknown = raw.keys() - known
        if unknown:
            raise ParseError(f"unknown config key {sorted(unknown)[0]!r}")
        return cls(**raw)


@dataclass(frozen=True)
class TraceEntry:
    """Per-generation stats: the population's best and mean fitness."""

    generation: int
    best_fitness: float
    mean_fitness: float
    best_route: Route


def random_route(net: RoadNetwork, rng: random.Random, max_retries: int = 100) -> Route:
    """Uniform random walk from a start node, stopping at the first lot.

    The walk never revisits a node; on a dead end it restarts from scratch.
    Raises NoRouteFound after max_retries failed walks, which signals a
    poorly connected network rather than bad luck.
    """
    starts = net.start_nodes
    for _ in range(max_retries):
        here = rng.choice(starts)
        walk = [here]
        visited = {here}
        while net.role(here) is not NodeRole.PARKING_LOT:
            options = [x for x in sorted(net.neighbors(here)) if x not in visited]
            if not options:
                break
            here = rng.choice(options)
            walk.append(here)
            visited.add(here)
        else:
            return tuple(walk)
    raise NoRouteFound(f"no start-to-lot walk found in {max_retries} attempts")


def init_population(net: RoadNetwork, config: GAConfig, rng: random.Random) -> list[Chromosome]:
    return [
        Chromosome(random_route(net, rng, config.max_init_retries))
        for _ in range(config.population_size)
    ]


def evaluate_population(
    population: Iterable[Chromosome],
    net: RoadNetwork,
    slot: TimeSlot,
    weights: WeightVector,
    bounds: ObjectiveBounds,
):
    """Fill in missing fitness values; already-scored individuals are left alone."""
    for chrom in population:
        if chrom.fitness is None:
            chrom.fitness = fitness(net, chrom.route, slot, weights, bounds)


def tournament_select(
    population: Sequence[Chromosome], size: int, rng: random.Random
) -> Chromosome:
    """Draw min(size, len(population)) distinct individuals, return the fittest.

    Ties go to the earliest drawn, so the result is fully determined by the
    rng. The population must already be evaluated.
    """
    k = min(size, len(population))
    best = None
    for i in rng.sample(range(len(population)), k):
        chrom = population[i]
        if best is None or chrom.fitness < best.fitness:
            best = chrom
    return best


def _half_splice(prefix_parent: Route, suffix_parent: Route, net: RoadNetwork) -> Route | None:
    """Join a prefix of one route to a suffix of the other, nearest the half cut.

    Target cuts are ceil(len/2) in both parents. If that child is not a valid
    route, walk outward over all interior cut pairs in order of distance from
    the target (ties by position) and return the first valid child; None if no
    cut pair works at all.
    """
    la, lb = len(prefix_parent), len(suffix_parent)
    i0, j0 = math.ceil(la / 2), math.ceil(lb / 2)
    cuts = sorted(
        (abs(i - i0) + abs(j - j0), i, j)
        for i in range(1, la)
        for j in range(1, lb)
    )
    for _, i, j in cuts:
        child = prefix_parent[:i] + suffix_parent[j:]
        if net.is_valid_route(child):
            return child
    return None


def _fitter(a: Chromosome, b: Chromosome) -> Chromosome:
    fa = math.inf if a.fitness is None else a.fitness
    fb = math.inf if b.fitness is None else b.fitness
    return a if fa <= fb else b


def single_point_crossover(
    parent_a: Chromosome,
    parent_b: Chromosome,
    net: RoadNetwork,
    rng: random.Random | None = None,
) -> tuple[Chromosome, Chromosome]:
    """Two children: a's head + b's tail, and b's head + a's tail.

    Whenever no cut pair yields a valid child, that child is replaced by a
    copy of the fitter parent. rng is accepted for signature symmetry with
    the other operators; the cut search itself is deterministic.
    """
    first = _half_splice(parent_a.route, parent_b.route, net)
    second = _half_splice(parent_b.route, parent_a.route, net)
    fallback = _fitter(parent_a, parent_b)
    return (
        Chromosome(first) if first is not None else Chromosome(fallback.route, fallback.fitness),
        Chromosome(second) if second is not None else Chromosome(fallback.route, fallback.fitness),
    )


def replacement_candidates(net: RoadNetwork, route: Route, index: int) -> list[int]:
    """Nodes that could replace route[index]: adjacent to both flanking nodes
    and not already on the route. Only interior genes can be replaced."""
    if not 1 <= index <= len(route) - 2:
        raise ValidationError(f"index {index} is not an interior gene")
    left, right = route[index - 1], route[index + 1]
    used = set(route)
    return sorted((net.neighbors(left) & net.neighbors(right)) - used)


def replace_gene(
    net: RoadNetwork, route: Route, index: int, rng: random.Random
) -> Route:
    """Swap one interior gene for a random valid detour; no-op if none exists."""
    candidates = replacement_candidates(net, route, index)
    if not candidates:
        return tuple(route)
    return tuple(route[:index]) + (rng.choice(candidates),) + tuple(route[index + 1 :])


def creep_mutate(chrom: Chromosome, net: RoadNetwork, rng: random.Random) -> Chromosome:
    """Each interior gene flips a 1/len coin; on heads it is swapped for a
    random common neighbor of its flanks. Endpoints never change."""
    route = chrom.route
    n = len(route)
    changed = False
    for i in range(1, n - 1):
        if rng.random() < 1.0 / n:
            new_route = replace_gene(net, route, i, rng)
            changed = changed or new_route != route
            route = new_route
    if not changed:
        return Chromosome(chrom.route, chrom.fitness)
    return Chromosome(route)


def evolve_generation(
    population: list[Chromosome],
    net: RoadNetwork,
    slot: TimeSlot,
    weights: WeightVector,
    bounds: ObjectiveBounds,
    config: GAConfig,
    rng: random.Random,
) -> list[Chromosome]:
    """One generational step: elites survive, the rest of the next population
    is bred by tournament selection, optional crossover, then mutation."""
    evaluate_population(population, net, slot, weights, bounds)
    ranked = sorted(range(len(population)), key=lambda i: (population[i].fitness, i))
    nxt = [population[i] for i in ranked[: config.elitism_count]]
    while len(nxt) < config.population_size:
        parent_a = tournament_select(population, config.tournament_size, rng)
        parent_b = tournament_select(population, config.tournament_size, rng)
        if rng.random() < config.crossover_rate:
            child_a, child_b = single_point_crossover(parent_a, parent_b, net, rng)
            evaluate_population((child_a, child_b), net, slot, weights, bounds)
            chosen = _fitter(child_a, child_b)
        else:
            chosen = _fitter(parent_a, parent_b)
        nxt.append(creep_mutate(chosen, net, rng))
    return nxt


def run(
    net: RoadNetwork,
    slot: TimeSlot,
    weights: WeightVector,
    config: GAConfig,
) -> tuple[Chromosome, list[TraceEntry]]:
    """Full GA run; returns the best individual ever seen and one trace entry
    per generation. With elitism the per-generation best never worsens."""
    rng = random.Random(config.rng_seed)
    bounds = compute_bounds(net)
    population = init_population(net, config, rng)
    evaluate_population(population, net, slot, weights, bounds)
    best = min(population, key=lambda c: c.fitness)
    trace: list[TraceEntry] = []
    for generation in range(1, config.generations + 1):
        population = evolve_generation(
            population, net, slot, weights, bounds, config, rng
        )
        evaluate_population(population, net, slot, weights, bounds)
        gen_best = min(population, key=lambda c: c.fitness)
        if gen_best.fitness < best.fitness:
            best = gen_best
        trace.append(
            TraceEntry(
                generation,
                gen_best.fitness,
                fmean(c.fitness for c in population),
                gen_best.route,
            )
        )
    return best, trace


def write_trace_csv(trace: Iterable[TraceEntry], path):
    """One row per generation: generation, best_fitness, mean_fitness, best_route."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["generation", "best_fitness", "mean_fitness", "best_route"])
        for entry in trace:
            writer.writerow(
                [
                    entry.generation,
                    f"{entry.best_fitness:.6f}",
                    f"{entry.mean_fitness:.6f}",
                    format_route(entry.best_route),
                ]
            )
