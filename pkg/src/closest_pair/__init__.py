"""Closest pair of points: seven algorithms, a packing bound, generators and a benchmark harness."""

from .generators import (
    GenSpec,
    gen_adversarial_mm,
    gen_truncated_normal,
    gen_uniform,
    generate,
)
from .geometry import (
    BoundingBox,
    ClosestPairResult,
    OpCounters,
    Point,
    bounding_box,
    euclidean_distance,
    read_points,
    squared_distance,
    write_points,
)
from .grids import DenseGrid, SparseGrid, cell_index, cpp_km, cpp_mm, cpp_rl
from .naive import cpp_ap, cpp_aps
from .ordered import cpp_dc, cpp_ps
from .packing import PackingBound, c_n, delta_bar

#: algorithm short names -> callables taking ``(points, seed)``
ALGORITHMS = {
    "ap": lambda pts, seed=None: cpp_ap(pts),
    "aps": lambda pts, seed=None: cpp_aps(pts),
    "dc": lambda pts, seed=None: cpp_dc(pts),
    "ps": lambda pts, seed=None: cpp_ps(pts),
    "rl": lambda pts, seed=None: cpp_rl(pts, seed, "distances"),
    "km": lambda pts, seed=None: cpp_km(pts, seed),
    "mm": lambda pts, seed=None: cpp_mm(pts),
}

__all__ = [
    "ALGORITHMS",
    "BoundingBox",
    "ClosestPairResult",
    "DenseGrid",
    "GenSpec",
    "OpCounters",
    "PackingBound",
    "Point",
    "SparseGrid",
    "bounding_box",
    "c_n",
    "cell_index",
    "cpp_ap",
    "cpp_aps",
    "cpp_dc",
    "cpp_km",
    "cpp_mm",
    "cpp_ps",
    "cpp_rl",
    "delta_bar",
    "euclidean_distance",
    "gen_adversarial_mm",
    "gen_truncated_normal",
    "gen_uniform",
    "generate",
    "read_points",
    "squared_distance",
    "write_points",
]
