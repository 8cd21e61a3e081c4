"""
The packing-bound grid
======================

How large can the smallest pairwise distance of n points in the unit
square be? The bound ``delta_bar(n)`` answers that, and using it as a
cell size gives a grid where the closest pair must share a cell or
touch one.
"""

import numpy as np

from closest_pair import DenseGrid, cpp_mm, delta_bar, gen_adversarial_mm, gen_uniform

# both terms of the bound for 100 points; the smaller one wins
b = delta_bar(100)
print(f"u1 = {b.u1:.5f}  u2 = {b.u2:.5f}  delta_bar = {b.delta_bar:.5f}")
print(f"grid over the unit square: {b.cells_per_side} x {b.cells_per_side} cells")

# the bound shrinks like 1/sqrt(n)
for k in (4, 8, 12, 16, 20):
    n = 2**k
    print(f"n = 2^{k:<2}  delta_bar * sqrt(n) = {delta_bar(n).delta_bar * np.sqrt(n):.4f}")

# bucket 100 uniform points; most cells hold one or two
pts = gen_uniform(100, 1)
grid = DenseGrid.build(pts, b.delta_bar, b.cells_per_side, (0.0, 0.0))
print(grid.sizes())

result, counters = cpp_mm(pts)
print(f"closest pair {result.indices} at {result.delta:.5f}, "
      f"{counters.distance_evaluations} distances evaluated")

# the bad case: four points pin the box, everything else shares one cell
adv = gen_adversarial_mm(100)
result, counters = cpp_mm(adv)
print(f"adversarial: {counters.distance_evaluations} distances for 100 points "
      f"(all pairs would be {100 * 99 // 2})")
