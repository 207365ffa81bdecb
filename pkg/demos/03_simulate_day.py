"""Run the optimizer across all six time slots of a day.

Each slot sees different congestion speeds and lot availability, so
the recommended route changes over the day.  Writes the fitness
traces (CSV), the per-slot route table (text), and a convergence
plot (SVG) into demos/output/.
"""
from pathlib import Path

from parkroute import datasets
from parkroute.ga import GAConfig
from parkroute.network import format_route
from parkroute.scenario import emit_fitness_csv, emit_plot, emit_route_table, run_day

net = datasets.load_city31()
weights = datasets.load_default_weights()

report = run_day(net, weights, GAConfig(rng_seed=3))

print("best route per time slot:")
for result in report.slots:
    print(f"  {result.slot.label:>8}  fitness {result.best_fitness:.6f}  {format_route(result.best_route)}")

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)
emit_fitness_csv(report, out / "fitness.csv")
emit_route_table(report, out / "routes.txt")
emit_plot(report, out / "fitness.svg")
print()
print(f"wrote fitness.csv, routes.txt, fitness.svg to {out}")
