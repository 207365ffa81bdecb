"""parkroute: multi-objective parking-route discovery.

Survey counts calibrate how much drivers care about distance, speed and
parking availability; a genetic algorithm then hunts for routes that score
well on that weighted blend over a road network whose speeds and lot
occupancy change across six four-hour slots of the day.
"""
from .errors import (
    DegenerateBounds,
    EmptyNetwork,
    EmptySurvey,
    InvalidConcentration,
    InvalidRoute,
    LimitExceeded,
    NoRouteFound,
    NotAParkingLot,
    ParkrouteError,
    ParseError,
    UnknownNode,
    ValidationError,
)
from .ga import (
    Chromosome,
    GAConfig,
    TraceEntry,
    creep_mutate,
    evolve_generation,
    init_population,
    random_route,
    replace_gene,
    replacement_candidates,
    run,
    single_point_crossover,
    tournament_select,
    write_trace_csv,
)
from .network import (
    SEED_ROUTES,
    SLOT_LABELS,
    Edge,
    NodeRole,
    RoadNetwork,
    Route,
    TimeSlot,
    format_route,
    generate_example_network,
    load_network,
    parse_network,
    parse_route,
    save_network,
)
from .objectives import (
    ObjectiveBounds,
    WeightVector,
    compute_bounds,
    fitness,
    load_weights,
    normalize,
    objective_availability,
    objective_distance,
    objective_speed,
    parse_weights,
)
from .oracle import enumerate_routes, optimal_route
from .scenario import (
    DayReport,
    SlotResult,
    emit_fitness_csv,
    emit_plot,
    emit_route_table,
    parse_fitness_csv,
    parse_route_table,
    run_day,
    run_slot,
)
from .weights import (
    EstimateComparison,
    GridSearchConfig,
    SurveyCounts,
    WeightEstimate,
    bayesian_weights,
    compare_estimates,
    dm_log_marginal_likelihood,
    estimate_concentration,
    format_comparison,
    format_estimate,
    frequentist_weights,
    load_survey,
    parse_survey,
)

__version__ = "0.1.0"

__all__ = [
    "Chromosome",
    "DayReport",
    "DegenerateBounds",
    "Edge",
    "EmptyNetwork",
    "EmptySurvey",
    "EstimateComparison",
    "GAConfig",
    "GridSearchConfig",
    "InvalidConcentration",
    "InvalidRoute",
    "LimitExceeded",
    "NoRouteFound",
    "NodeRole",
    "NotAParkingLot",
    "ObjectiveBounds",
    "ParkrouteError",
    "ParseError",
    "RoadNetwork",
    "Route",
    "SEED_ROUTES",
    "SLOT_LABELS",
    "SlotResult",
    "SurveyCounts",
    "TimeSlot",
    "TraceEntry",
    "UnknownNode",
    "ValidationError",
    "WeightEstimate",
    "WeightVector",
    "bayesian_weights",
    "compare_estimates",
    "compute_bounds",
    "creep_mutate",
    "dm_log_marginal_likelihood",
    "emit_fitness_csv",
    "emit_plot",
    "emit_route_table",
    "enumerate_routes",
    "estimate_concentration",
    "evolve_generation",
    "fitness",
    "format_comparison",
    "format_estimate",
    "format_route",
    "frequentist_weights",
    "generate_example_network",
    "init_population",
    "load_network",
    "load_survey",
    "load_weights",
    "normalize",
    "objective_availability",
    "objective_distance",
    "objective_speed",
    "optimal_route",
    "parse_fitness_csv",
    "parse_network",
    "parse_route",
    "parse_route_table",
    "parse_survey",
    "parse_weights",
    "random_route",
    "replace_gene",
    "replacement_candidates",
    "run",
    "run_day",
    "run_slot",
    "save_network",
    "single_point_crossover",
    "tournament_select",
    "write_trace_csv",
]
