"""
Concentrated point clouds
=========================

Shrinking sigma squeezes the truncated normal cloud towards the centre.
The grid methods scale their cells to the cloud, the sweeps do not care.
"""

from closest_pair.bench import BenchConfig, emit_plot, run_benchmark

records = []
for k in range(7):
    config = BenchConfig(
        algorithms=("aps", "ps", "km", "mm"),
        n_min=2**12,
        n_max=2**12,
        reps=3,
        distribution="truncated_normal",
        sigma=2.0**-k,
    )
    records += run_benchmark(config)

emit_plot(records, "sigma_sweep", "sigma_sweep.svg")
print("wrote sigma_sweep.svg")
