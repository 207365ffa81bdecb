"""Whole-day simulation: one GA run per time slot, plus report writers.

Outputs are deterministic down to the byte for a given network, weights and
config, so runs can be diffed: CSV floats use fixed precision and the SVG
plot is stripped of timestamps and salted hashes.
"""
from __future__ import annotations

import csv
import dataclasses
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .errors import ParseError, ValidationError
from .ga import GAConfig, TraceEntry, run
from .network import RoadNetwork, Route, TimeSlot, format_route, parse_route
from .objectives import WeightVector


@dataclass(frozen=True)
class SlotResult:
    """Best route found for one time slot, with the full GA trace."""

    slot: TimeSlot
    best_route: Route
    best_fitness: float
    trace: tuple[TraceEntry, ...]


@dataclass(frozen=True)
class DayReport:
    """Six SlotResults in clock order plus the inputs that produced them."""

    weights: WeightVector
    config: GAConfig
    slots: tuple[SlotResult, ...]

    def __post_init__(self):
        if tuple(r.slot for r in self.slots) != tuple(TimeSlot):
            raise ValidationError("day report needs one result per slot, in clock order")

    def slot_result(self, slot: TimeSlot) -> SlotResult:
        return self.slots[slot.index]


def run_slot(
    net: RoadNetwork, slot: TimeSlot, weights: WeightVector, config: GAConfig
) -> SlotResult:
    best, trace = run(net, slot, weights, config)
    return SlotResult(slot, best.route, best.fitness, tuple(trace))


def run_day(net: RoadNetwork, weights: WeightVector, config: GAConfig) -> DayReport:
    """One GA run per slot; slot i runs with rng_seed + i so runs differ but
    the whole day is reproducible from the one configured seed."""
    results = []
    for slot in TimeSlot:
        slot_config = dataclasses.replace(config, rng_seed=config.rng_seed + slot.index)
        results.append(run_slot(net, slot, weights, slot_config))
    return DayReport(weights, config, tuple(results))


def emit_fitness_csv(report: DayReport, path):
    """Per-generation best fitness, one column per slot, six decimals."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["generation"] + [slot.label for slot in TimeSlot])
        for g in range(report.config.generations):
            row = [str(g + 1)]
            for result in report.slots:
                row.append(f"{result.trace[g].best_fitness:.6f}")
            writer.writerow(row)


def parse_fitness_csv(path) -> dict[TimeSlot, list[float]]:
    """Read back emit_fitness_csv output as slot -> fitness series."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["generation"] + [s.label for s in TimeSlot]:
        raise ParseError(f"{path} does not look like a fitness table")
    series: dict[TimeSlot, list[float]] = {slot: [] for slot in TimeSlot}
    for row in rows[1:]:
        if len(row) != 1 + len(tuple(TimeSlot)):
            raise ParseError(f"fitness row has {len(row)} cells")
        for slot, cell in zip(TimeSlot, row[1:]):
            series[slot].append(float(cell))
    return series


def emit_route_table(report: DayReport, path):
    """Best route per slot as a fixed-width text table."""
    width = max(len("time_slot"), *(len(s.label) for s in TimeSlot)) + 2
    lines = [f"{'time_slot':<{width}}best_route"]
    for result in report.slots:
        lines.append(f"{result.slot.label:<{width}}{format_route(result.best_route)}")
    Path(path).write_text("\n".join(lines) + "\n")


def parse_route_table(path) -> dict[TimeSlot, Route]:
    """Read back emit_route_table output as slot -> route."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].split() != ["time_slot", "best_route"]:
        raise ParseError(f"{path} does not look like a route table")
    out: dict[TimeSlot, Route] = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        label, route_text = line.split(None, 1)
        out[TimeSlot.from_label(label)] = parse_route(route_text)
    if set(out) != set(TimeSlot):
        raise ParseError(f"{path} is missing slots")
    return out


def emit_plot(report: DayReport, path):
    """SVG of best fitness by generation, one line per slot.

    Fixed svg.hashsalt and a scrubbed Date field keep the bytes identical
    across runs and processes; fonttype "none" keeps labels as searchable
    text.
    """
    rc = {
        "svg.hashsalt": "parkroute",
        "svg.fonttype": "none",
    }
    with matplotlib.rc_context(rc):
        fig, ax = plt.subplots(figsize=(8.0, 4.5))
        for result in report.slots:
            ax.plot(
                [entry.generation for entry in result.trace],
                [entry.best_fitness for entry in result.trace],
                label=result.slot.label,
                gid=f"trace-{result.slot.label}",
            )
        ax.set_xlabel("generation")
        ax.set_ylabel("best fitness")
        ax.set_title("Best fitness by generation")
        ax.legend(title="time slot")
        fig.tight_layout()
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
