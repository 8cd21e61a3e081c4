"""
Iterations of the nested scans
==============================

``I2(n)`` is the mean number of inner-loop bodies per outer iteration.
For the all-pairs scan it is exactly n/2, so doubling n doubles it. The
x-sorted scan with early exit stops as soon as the x-gap exceeds the
current minimum, and on uniform data its ``I2`` barely moves.
"""

from closest_pair.bench import BenchConfig, emit_plot, run_benchmark
from closest_pair.bench.plot import series

config = BenchConfig(algorithms=("ap", "aps"), n_min=2**8, n_max=2**13, reps=3, seed_base=1)
records = run_benchmark(config)

for algo, pts in sorted(series(records, "iteration_ratio").items()):
    print(algo, "  ".join(f"{n}: {r:.2f}" for n, r in pts))

svg = emit_plot(records, "iteration_ratio", "iteration_ratio.svg")
print("wrote iteration_ratio.svg")
