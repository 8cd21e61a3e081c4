"""Bucket-grid algorithms: packing-bound grid (cppMM), Rabin-Lipton (cppRL), Khuller-Matias (cppKM).

All three rely on the same fact: two points closer than the cell size sit in
the same cell or in one of its eight neighbours. Sweeping each cell against
itself plus four "forward" neighbours (right, and the three cells of the next
column) therefore covers every such pair exactly once.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .geometry import (
    ClosestPairResult,
    OpCounters,
    Point,
    PointsLike,
    as_array,
    bounding_box,
    make_result,
)
from .naive import cpp_aps, scan_all_pairs
from .packing import delta_bar

__all__ = [
    "DenseGrid",
    "SparseGrid",
    "cell_index",
    "cpp_mm",
    "cpp_rl",
    "cpp_km",
    "FORWARD_NEIGHBOURS",
]

RngLike = Union[np.random.Generator, int, None]

# (di, dj) offsets of the forward neighbours, in sweep order after the cell itself
FORWARD_NEIGHBOURS = ((0, 1), (1, -1), (1, 0), (1, 1))
_NINE = tuple((di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1))

# dense grids are capped at this many cells per point (plus a constant)
_MAX_CELLS_PER_POINT = 4
# quotients this large switch cell keys to exact rational arithmetic
_EXACT_ABOVE = float(2**49)


def cell_index(
    p: Sequence[float],
    cell_size: float,
    origin: Sequence[float] = (0.0, 0.0),
    g: Optional[int] = None,
) -> tuple[int, int]:
    """1-based cell of *p*, optionally clamped to a ``g x g`` grid."""
    if not cell_size > 0:
        raise ValueError("degenerate cell size")
    i = math.floor((p[0] - origin[0]) / cell_size) + 1
    j = math.floor((p[1] - origin[1]) / cell_size) + 1
    if g is not None:
        i = min(max(i, 1), g)
        j = min(max(j, 1), g)
    return i, j


@dataclass
class DenseGrid:
    """A ``g x g`` array of buckets stored as one cell-sorted index array.

    ``order[starts[c]:starts[c + 1]]`` are the input indices in flat cell
    ``c = (i - 1) * g + (j - 1)``, kept in input order.
    """

    cell_size: float
    g: int
    origin: Point
    order: np.ndarray
    starts: np.ndarray

    @classmethod
    def build(cls, points: np.ndarray, cell_size: float, g: int, origin: Sequence[float]) -> DenseGrid:
        if not cell_size > 0:
            raise ValueError("degenerate cell size")
        ox, oy = float(origin[0]), float(origin[1])
        ci = _clamped_floor((points[:, 0] - ox) / cell_size, g)
        cj = _clamped_floor((points[:, 1] - oy) / cell_size, g)
        flat = ci * g + cj
        order = np.argsort(flat, kind="stable")
        starts = np.zeros(g * g + 1, dtype=np.int64)
        np.cumsum(np.bincount(flat, minlength=g * g), out=starts[1:])
        return cls(cell_size, g, Point(ox, oy), order, starts)

    def bucket(self, i: int, j: int) -> np.ndarray:
        """Input indices in cell ``(i, j)``; cells outside the grid are empty."""
        if not (1 <= i <= self.g and 1 <= j <= self.g):
            return self.order[:0]
        c = (i - 1) * self.g + (j - 1)
        return self.order[self.starts[c]:self.starts[c + 1]]

    def sizes(self) -> np.ndarray:
        return np.diff(self.starts).reshape(self.g, self.g)


def _clamped_floor(q: np.ndarray, g: int) -> np.ndarray:
    return np.clip(np.floor(q), 0, g - 1).astype(np.int64)


@dataclass
class SparseGrid:
    """Hash-backed grid over an unbounded lattice of square cells.

    Keys are 1-based ``(i, j)`` cell indices; only filled cells are stored.
    ``capacity`` is the slot count an open-hashing table would reserve for
    *n* points.
    """

    cell_size: float
    capacity: int
    table: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    keys: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def build(cls, points: np.ndarray, cell_size: float, indices: Optional[np.ndarray] = None) -> SparseGrid:
        """Bucket ``points[indices]`` (all points by default); ``keys`` follows *indices*."""
        if not cell_size > 0:
            raise ValueError("degenerate cell size")
        if indices is None:
            indices = np.arange(len(points))
        n = max(len(indices), 1)
        grid = cls(cell_size, 1 << math.ceil(math.log2(3 * n)))
        grid.keys = _cell_keys(points[indices], cell_size)
        table = grid.table
        for p, key in zip(indices.tolist(), grid.keys):
            bucket = table.get(key)
            if bucket is None:
                table[key] = [p]
            else:
                bucket.append(p)
        return grid

    def get(self, i: int, j: int) -> list[int]:
        return self.table.get((i, j), _EMPTY)

    @property
    def occupied(self) -> int:
        return len(self.table)


_EMPTY: list[int] = []


def _cell_keys(points: np.ndarray, cell_size: float) -> list[tuple[int, int]]:
    fi = np.floor(points[:, 0] / cell_size)
    fj = np.floor(points[:, 1] / cell_size)
    if len(fi) and max(np.abs(fi).max(), np.abs(fj).max()) >= _EXACT_ABOVE:
        # tiny cells: rounded quotients could merge neighbouring cells, so divide exactly
        c = Fraction(cell_size)
        return [
            (math.floor(Fraction(x) / c) + 1, math.floor(Fraction(y) / c) + 1)
            for x, y in points.tolist()
        ]
    ki = (fi.astype(np.int64) + 1).tolist()
    kj = (fj.astype(np.int64) + 1).tolist()
    return list(zip(ki, kj))


def mm_grid_shape(arr: np.ndarray) -> Optional[tuple[float, int, Point]]:
    """Cell size, cells per side and origin of the packing-bound grid.

    Returns ``None`` for clouds with zero area, where the scaling is undefined.
    """
    n = len(arr)
    box = bounding_box(arr)
    area = box.w * box.h
    if not area > 0:
        return None
    cell = delta_bar(n).delta_bar * math.sqrt(area)
    extent = max(box.w, box.h)
    g = max(1, math.ceil(extent / cell))
    max_cells = _MAX_CELLS_PER_POINT * n + 64
    if g * g > max_cells:
        # elongated cloud: coarser cells keep the grid O(n); exactness is unaffected
        g = math.isqrt(max_cells)
        cell = extent / g
    return cell, g, box.origin


def cpp_mm(points: PointsLike) -> tuple[ClosestPairResult, OpCounters]:
    """Deterministic grid search with the packing bound as cell size.

    The bound, scaled to the cloud's bounding box, is an upper bound on the
    closest-pair distance, so the forward-neighbour sweep over a dense grid
    with that cell size finds the closest pair. If no pair closer than the
    cell size exists (the scaled bound is not guaranteed for non-square
    clouds) or the cloud has zero area, the result comes from :func:`cpp_aps`.
    """
    arr = as_array(points)
    shape = mm_grid_shape(arr)
    if shape is None:
        return cpp_aps(arr)
    cell, g, origin = shape
    grid = DenseGrid.build(arr, cell, g, origin)

    sx = arr[grid.order, 0].tolist()
    sy = arr[grid.order, 1].tolist()
    starts = grid.starts.tolist()
    sqrt = math.sqrt
    delta = cell
    bi = bj = -1
    outer = inner = 0
    for c in range(g * g):
        s = starts[c]
        e = starts[c + 1]
        if s == e:
            continue
        i0, j0 = divmod(c, g)
        right = (starts[c + 1], starts[c + 2]) if j0 + 1 < g else (0, 0)
        below = []
        if i0 + 1 < g:
            lo = c + g - 1 if j0 >= 1 else c + g
            hi = c + g + 2 if j0 + 1 < g else c + g + 1
            # three cells of the next column are contiguous in flat order
            below = [(starts[lo], starts[hi])]
        outer += e - s
        for a in range(s, e):
            x1 = sx[a]
            y1 = sy[a]
            for lo_b, hi_b in (right, (a + 1, e), *below):
                inner += hi_b - lo_b
                for b in range(lo_b, hi_b):
                    dx = x1 - sx[b]
                    dy = y1 - sy[b]
                    d = sqrt(dx * dx + dy * dy)
                    if d < delta:
                        delta, bi, bj = d, a, b
    counters = OpCounters(outer, inner, inner)
    if bi < 0:
        fallback, extra = cpp_aps(arr)
        counters += extra
        return fallback, counters
    order = grid.order
    return make_result(arr[:, 0], arr[:, 1], int(order[bi]), int(order[bj])), counters


def _sweep_sparse(
    xs: list[float],
    ys: list[float],
    grid: SparseGrid,
    delta: float,
    bi: int,
    bj: int,
    counters: OpCounters,
) -> tuple[float, int, int]:
    """Visit every filled bucket once, in order of first occupant."""
    sqrt = math.sqrt
    table = grid.table
    visited = set()
    outer = inner = 0
    for key in grid.keys:
        if key in visited:
            continue
        visited.add(key)
        bucket = table[key]
        i, j = key
        neighbours = [table.get((i + di, j + dj), _EMPTY) for di, dj in FORWARD_NEIGHBOURS]
        m = len(bucket)
        outer += m
        for a in range(m):
            p1 = bucket[a]
            x1 = xs[p1]
            y1 = ys[p1]
            for partners in (bucket[a + 1:], *neighbours):
                inner += len(partners)
                for p2 in partners:
                    dx = x1 - xs[p2]
                    dy = y1 - ys[p2]
                    d = sqrt(dx * dx + dy * dy)
                    if d < delta:
                        delta, bi, bj = d, p1, p2
    counters.outer_iterations += outer
    counters.inner_iterations += inner
    counters.distance_evaluations += inner
    return delta, bi, bj


def _nearest_other(arr: np.ndarray, candidates: np.ndarray, k: int) -> tuple[float, int]:
    """Distance from point *k* to its nearest neighbour among *candidates* (excluding *k*)."""
    dx = arr[k, 0] - arr[candidates, 0]
    dy = arr[k, 1] - arr[candidates, 1]
    d = np.sqrt(dx * dx + dy * dy)
    d[candidates == k] = np.inf
    m = int(d.argmin())
    return float(d[m]), int(candidates[m])


def cpp_rl(
    points: PointsLike,
    rng: RngLike = None,
    sampling_mode: Literal["points", "distances"] = "distances",
) -> tuple[ClosestPairResult, OpCounters]:
    """Randomised grid search with an estimated cell size.

    The estimate ``d`` is either the closest-pair distance of a random sample
    of ``floor(sqrt(n))`` points (``"points"``) or the smallest of n random
    pair distances (``"distances"``). Points are hashed into cells of size
    ``d`` and each filled cell is swept against itself and its forward
    neighbours.
    """
    arr = as_array(points)
    n = len(arr)
    rng = np.random.default_rng(rng)
    xs = arr[:, 0].tolist()
    ys = arr[:, 1].tolist()
    counters = OpCounters()

    if sampling_mode == "points":
        k = max(2, math.isqrt(n))
        sample = rng.choice(n, size=k, replace=False)
        d, si, sj = scan_all_pairs(xs, ys, sample.tolist(), counters)
    elif sampling_mode == "distances":
        first = rng.integers(0, n, size=n)
        second = rng.integers(0, n - 1, size=n)
        second += second >= first
        dx = arr[first, 0] - arr[second, 0]
        dy = arr[first, 1] - arr[second, 1]
        dist = np.sqrt(dx * dx + dy * dy)
        m = int(dist.argmin())
        d, si, sj = float(dist[m]), int(first[m]), int(second[m])
        counters.outer_iterations += 1
        counters.inner_iterations += n
        counters.distance_evaluations += n
    else:
        raise ValueError(f"unknown sampling mode {sampling_mode!r}")

    if d == 0.0:
        return make_result(xs, ys, si, sj), counters
    grid = SparseGrid.build(arr, d)
    _, bi, bj = _sweep_sparse(xs, ys, grid, d, si, sj, counters)
    return make_result(xs, ys, bi, bj), counters


def sieve_round(arr: np.ndarray, survivors: np.ndarray, cell_size: float) -> np.ndarray:
    """Keep the *survivors* that share their 3x3 block of cells with another survivor."""
    keys = _cell_keys(arr[survivors], cell_size)
    occupancy = Counter(keys)
    keep = [
        sum(occupancy.get((i + di, j + dj), 0) for di, dj in _NINE) > 1
        for i, j in keys
    ]
    return survivors[np.array(keep, dtype=bool)]


def cpp_km(points: PointsLike, rng: RngLike = None) -> tuple[ClosestPairResult, OpCounters]:
    """Khuller-Matias sieve followed by one exhaustive grid pass.

    Each sieve round takes the nearest-neighbour distance ``d`` of a random
    surviving point, grids the survivors with cell size ``d/3`` and drops every
    point that is alone in its 3x3 block. The sampled point itself is always
    dropped, so rounds strictly shrink the set. The last ``d`` is an actual
    pair distance, so a final grid of cell size ``d`` where each point checks
    its 3x3 block finds the closest pair.
    """
    arr = as_array(points)
    n = len(arr)
    rng = np.random.default_rng(rng)
    xs = arr[:, 0].tolist()
    ys = arr[:, 1].tolist()
    counters = OpCounters()

    survivors = np.arange(n)
    d, si, sj = math.inf, -1, -1
    while len(survivors):
        si = int(survivors[rng.integers(len(survivors))])
        d, sj = _nearest_other(arr, survivors, si)
        counters.outer_iterations += 1
        counters.inner_iterations += len(survivors) - 1
        counters.distance_evaluations += len(survivors) - 1
        if d == 0.0:
            return make_result(xs, ys, si, sj), counters
        survivors = sieve_round(arr, survivors, d / 3.0)

    grid = SparseGrid.build(arr, d)
    table = grid.table
    sqrt = math.sqrt
    delta, bi, bj = d, si, sj
    inner = 0
    for p1, (i, j) in enumerate(grid.keys):
        x1 = xs[p1]
        y1 = ys[p1]
        for di, dj in _NINE:
            partners = table.get((i + di, j + dj), _EMPTY)
            for p2 in partners:
                if p2 == p1:
                    continue
                inner += 1
                dx = x1 - xs[p2]
                dy = y1 - ys[p2]
                dd = sqrt(dx * dx + dy * dy)
                if dd < delta:
                    delta, bi, bj = dd, p1, p2
    counters.outer_iterations += n
    counters.inner_iterations += inner
    counters.distance_evaluations += inner
    return make_result(xs, ys, bi, bj), counters
