"""
Running time over doubling n
============================

Every algorithm sees the same instances; only the call itself is timed.
Means over the repetitions go into a log-log chart.
"""

import sys

from closest_pair.bench import BenchConfig, aggregate, emit_plot, run_benchmark, write_csv

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 2**14

config = BenchConfig(
    algorithms=("ap", "aps", "dc", "ps", "rl", "km", "mm"),
    n_min=2**10,
    n_max=n_max,
    reps=3,
    ap_cap=2**13,
)
records = run_benchmark(config)
write_csv(records, "runtime.csv")

print(f"{'algo':>5} {'n':>7} {'mean us':>12} {'evals/n':>8}")
for a in aggregate(records):
    print(f"{a.algorithm:>5} {a.n:>7} {a.mean_elapsed_us:>12.0f} {a.mean_dist_evals / a.n:>8.2f}")

emit_plot(records, "runtime_loglog", "runtime.svg")
print("wrote runtime.csv and runtime.svg")
