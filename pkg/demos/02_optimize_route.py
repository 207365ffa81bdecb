"""Find a good parking route for one time slot with the genetic algorithm.

Loads the bundled 31-node city network, runs the GA for the morning
rush slot, and prints the best route alongside its raw objective
values so the trade-off is visible.
"""
from parkroute import datasets
from parkroute.ga import GAConfig, run
from parkroute.network import TimeSlot, format_route

net = datasets.load_city31()
weights = datasets.load_default_weights()
slot = TimeSlot.AM_8_12

config = GAConfig(rng_seed=7)
best, trace = run(net, slot, weights, config)

print(f"network: {net.node_count} nodes, starts {net.start_nodes}, lots {net.lot_nodes}")
print(f"slot: {slot.label}   weights: {weights.as_tuple()}")
print()
print(f"best route:   {format_route(best.route)}")
print(f"fitness:      {best.fitness:.6f}")
print(f"distance:     {net.route_distance(best.route):.2f} km")
print(f"speed sum:    {net.route_speed_sum(best.route, slot):.1f} km/h")
print(f"availability: {net.lot_availability(best.route[-1], slot):.1f}% at lot {best.route[-1]}")
print()
print("fitness by generation:")
for entry in trace:
    if entry.generation % 5 == 0 or entry.generation == 1:
        print(f"  gen {entry.generation:>3}: best {entry.best_fitness:.6f}  mean {entry.mean_fitness:.6f}")
