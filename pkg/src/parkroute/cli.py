"""Command line interface.

Exit codes: 0 on success, 1 for usage errors (bad flags, unknown
subcommands), 2 for data that parses or validates badly.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .errors import ParkrouteError, ParseError
from .ga import GAConfig, write_trace_csv
from .network import (
    SLOT_LABELS,
    TimeSlot,
    format_route,
    generate_example_network,
    load_network,
    save_network,
)
from .objectives import compute_bounds, fitness, load_weights
from .oracle import DEFAULT_MAX_ROUTES, enumerate_routes
from .scenario import (
    emit_fitness_csv,
    emit_plot,
    emit_route_table,
    run_day,
    run_slot,
)
from .weights import (
    bayesian_weights,
    compare_estimates,
    estimate_concentration,
    format_comparison,
    format_estimate,
    frequentist_weights,
    load_survey,
)

CONFIG_ENV_VAR = "PARKROUTE_CONFIG"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for bad data
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_ga_flags(parser: argparse.ArgumentParser, seed_required: bool = True):
    parser.add_argument("--seed", type=int, required=seed_required,
                        help="rng seed for the run")
    parser.add_argument("--generations", type=int, default=None,
                        help="generations per run (default 30)")
    parser.add_argument("--population", type=int, default=None,
                        help="population size (default 50)")
    parser.add_argument("--config", default=None,
                        help=f"JSON file of GAConfig fields; ${CONFIG_ENV_VAR} is used when unset")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parkroute",
                     description="Survey-weighted parking-route search")
    sub = parser.add_subparsers(dest="command", required=True)

    weights_cmd = sub.add_parser("weights", help="weight estimation")
    weights_sub = weights_cmd.add_subparsers(dest="weights_command", required=True)
    estimate = weights_sub.add_parser("estimate", help="estimate objective weights from a survey")
    estimate.add_argument("--survey", required=True, help="survey counts JSON file")
    estimate.add_argument("--method", choices=("freq", "bayes", "both"), default="both")
    estimate.set_defaults(handler=_cmd_weights_estimate)

    optimize = sub.add_parser("optimize", help="run the GA for one time slot")
    optimize.add_argument("--network", required=True, help="road network JSON file")
    optimize.add_argument("--slot", required=True, choices=SLOT_LABELS)
    optimize.add_argument("--weights", required=True, help="weight vector JSON file")
    _add_ga_flags(optimize)
    optimize.add_argument("--trace-out", default=None,
                          help="write the per-generation trace CSV here")
    optimize.set_defaults(handler=_cmd_optimize)

    simulate = sub.add_parser("simulate-day", help="run the GA for all six slots")
    simulate.add_argument("--network", required=True)
    simulate.add_argument("--weights", required=True)
    simulate.add_argument("--out", required=True, help="output directory")
    _add_ga_flags(simulate)
    simulate.set_defaults(handler=_cmd_simulate_day)

    gen = sub.add_parser("gen-network", help="generate a demo road network")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True, help="network JSON file to write")
    gen.set_defaults(handler=_cmd_gen_network)

    oracle_cmd = sub.add_parser("oracle", help="score every route by brute force")
    oracle_cmd.add_argument("--network", required=True)
    oracle_cmd.add_argument("--slot", required=True, choices=SLOT_LABELS)
    oracle_cmd.add_argument("--weights", required=True)
    oracle_cmd.add_argument("--max-routes", type=int, default=DEFAULT_MAX_ROUTES)
    oracle_cmd.add_argument("--max-path-length", type=int, default=None)
    oracle_cmd.set_defaults(handler=_cmd_oracle)

    return parser


def _build_config(args) -> GAConfig:
    values: dict = {}
    config_path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if config_path:
        try:
            raw = json.loads(Path(config_path).read_text())
        except OSError as exc:
            raise ParseError(f"cannot read config file {config_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ParseError("config file must be a JSON object")
        values.update(raw)
    if args.generations is not None:
        values["generations"] = args.generations
    if args.population is not None:
        values["population_size"] = args.population
    if args.seed is not None:
        values["rng_seed"] = args.seed
    return GAConfig.from_dict(values)


def _cmd_weights_estimate(args) -> int:
    counts = load_survey(args.survey)
    if args.method == "freq":
        print(format_estimate(frequentist_weights(counts), counts.categories))
    elif args.method == "bayes":
        concentration = estimate_concentration(counts)
        print(format_estimate(bayesian_weights(counts, concentration), counts.categories))
    else:
        print(format_comparison(compare_estimates(counts), counts.categories))
    return 0


def _cmd_optimize(args) -> int:
    net = load_network(args.network)
    weights = load_weights(args.weights)
    slot = TimeSlot.from_label(args.slot)
    config = _build_config(args)
    result = run_slot(net, slot, weights, config)
    print(f"slot: {slot.label}")
    print(f"best_fitness: {result.best_fitness:.6f}")
    print(f"best_route: {format_route(result.best_route)}")
    if args.trace_out:
        write_trace_csv(result.trace, args.trace_out)
        print(f"trace: {args.trace_out}")
    return 0


def _cmd_simulate_day(args) -> int:
    net = load_network(args.network)
    weights = load_weights(args.weights)
    config = _build_config(args)
    report = run_day(net, weights, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_fitness_csv(report, out / "fitness.csv")
    emit_route_table(report, out / "routes.txt")
    emit_plot(report, out / "fitness.svg")
    for result in report.slots:
        print(
            f"{result.slot.label}: best_fitness {result.best_fitness:.6f} "
            f"route {format_route(result.best_route)}"
        )
    print(f"wrote {out / 'fitness.csv'}, {out / 'routes.txt'}, {out / 'fitness.svg'}")
    return 0


def _cmd_gen_network(args) -> int:
    net = generate_example_network(args.seed)
    save_network(net, args.out)
    print(f"wrote {args.out} ({net.node_count} nodes, {len(net.edges())} edges)")
    return 0


def _cmd_oracle(args) -> int:
    net = load_network(args.network)
    weights = load_weights(args.weights)
    slot = TimeSlot.from_label(args.slot)
    bounds = compute_bounds(net)
    routes = enumerate_routes(net, args.max_routes, args.max_path_length)
    scored = [(fitness(net, route, slot, weights, bounds), route) for route in routes]
    scored.sort(key=lambda pair: pair[0])  # stable: ties stay in DFS order
    writer = csv.writer(sys.stdout)
    writer.writerow(["route", "fitness"])
    for value, route in scored:
        writer.writerow([format_route(route), f"{value:.6f}"])
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    try:
        return args.handler(args)
    except ParkrouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
