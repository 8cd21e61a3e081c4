import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closest_pair import ALGORITHMS as ALGORITHMS_ALL
from closest_pair import (
    DenseGrid,
    Point,
    SparseGrid,
    cell_index,
    cpp_ap,
    cpp_aps,
    cpp_km,
    cpp_mm,
    cpp_rl,
    delta_bar,
    gen_adversarial_mm,
    gen_truncated_normal,
    gen_uniform,
)
from closest_pair.grids import FORWARD_NEIGHBOURS, mm_grid_shape, sieve_round

from conftest import brute_min, extreme, point_sets, rel_err


def test_cell_index_examples():
    assert cell_index((0.23, 0.91), 0.117) == (2, 8)
    assert cell_index((0, 0), 0.117) == (1, 1)
    assert cell_index((1, 1), 0.117, g=9) == (9, 9)
    assert cell_index((1.5, 2.5), 0.5, origin=(1, 2)) == (2, 2)


@pytest.mark.parametrize("size", [0.0, -0.1, math.nan])
def test_cell_index_degenerate(size):
    with pytest.raises(ValueError, match="degenerate cell size"):
        cell_index((0.5, 0.5), size)
    with pytest.raises(ValueError, match="degenerate cell size"):
        SparseGrid.build(np.zeros((2, 2)), size)


@pytest.mark.parametrize("seed", range(5))
def test_dense_grid_partition(seed):
    pts = gen_uniform(300, seed)
    cell, g, origin = 0.13, 8, (0.0, 0.0)
    grid = DenseGrid.build(pts, cell, g, origin)
    assert grid.sizes().sum() == len(pts)
    assert sorted(grid.order.tolist()) == list(range(len(pts)))
    assert g * cell >= 1.0
    for i, j in itertools.product(range(1, g + 1), repeat=2):
        for k in grid.bucket(i, j):
            assert cell_index(pts[k], cell, origin, g) == (i, j)
    assert len(grid.bucket(0, 1)) == 0 and len(grid.bucket(g + 1, 1)) == 0


@given(point_sets(max_size=80), st.floats(min_value=0.01, max_value=0.7))
def test_sparse_grid_partition(pts, cell):
    arr = np.asarray(pts, dtype=float)
    grid = SparseGrid.build(arr, cell)
    seen = sorted(p for bucket in grid.table.values() for p in bucket)
    assert seen == list(range(len(arr)))
    for key, bucket in grid.table.items():
        for p in bucket:
            assert cell_index(arr[p], cell) == key
    assert grid.occupied <= len(arr)
    assert grid.capacity == 2 ** math.ceil(math.log2(3 * len(arr)))
    assert grid.get(-5, -5) == []


@given(point_sets(), st.floats(min_value=0.01, max_value=0.5))
def test_close_pairs_share_or_touch_cells(pts, cell):
    for p, q in itertools.combinations(pts, 2):
        if math.dist(p, q) < cell:
            (a, b), (c, d) = cell_index(p, cell), cell_index(q, cell)
            assert max(abs(a - c), abs(b - d)) <= 1


@pytest.mark.parametrize("g", [1, 2, 3, 7])
def test_forward_scheme_covers_each_adjacent_pair_once(g):
    cells = list(itertools.product(range(g), repeat=2))
    visited = []
    for i, j in cells:
        for di, dj in FORWARD_NEIGHBOURS:
            if 0 <= i + di < g and 0 <= j + dj < g:
                visited.append(frozenset({(i, j), (i + di, j + dj)}))
    adjacent = {
        frozenset({a, b})
        for a, b in itertools.combinations(cells, 2)
        if max(abs(a[0] - b[0]), abs(a[1] - b[1])) == 1
    }
    assert len(visited) == len(set(visited))
    assert set(visited) == adjacent


def test_mm_grid_is_nine_by_nine_at_hundred():
    pts = np.vstack([[(0.0, 0.0), (1.0, 1.0)], gen_uniform(98, 1)])
    cell, g, origin = mm_grid_shape(pts)
    assert cell == delta_bar(100).delta_bar
    assert g == 9 and origin == Point(0, 0)
    assert rel_err(cpp_mm(pts)[0].delta, brute_min(pts)) <= 1e-12


def test_mm_two_points_single_cell():
    cell, g, _ = mm_grid_shape(np.array([(0.0, 0.0), (1.0, 1.0)]))
    assert g == 1 and cell > math.sqrt(2)
    r, c = cpp_mm([(0, 0), (1, 1)])
    assert r.delta == math.sqrt(2)
    assert c.distance_evaluations == 1


def test_mm_adversarial_blowup():
    pts = gen_adversarial_mm(1000)
    r, c = cpp_mm(pts)
    assert r.delta == cpp_ap(pts)[0].delta
    assert c.distance_evaluations >= 0.4 * 996 * 995 / 2


@pytest.mark.parametrize(
    "pts",
    [
        [(0.1, 0.5), (0.4, 0.5), (0.45, 0.5), (0.9, 0.5)],
        [(0.3, 0.1), (0.3, 0.2), (0.3, 0.8)],
        [(0.7, 0.7)] * 4,
    ],
)
def test_mm_zero_area_falls_back(pts):
    r, c = cpp_mm(pts)
    assert r.delta == cpp_aps(pts)[0].delta
    assert c.inner_iterations <= len(pts) * (len(pts) - 1) // 2


def test_mm_elongated_cloud():
    rng = np.random.default_rng(4)
    pts = np.column_stack([rng.random(2000), rng.random(2000) * 1e-7])
    cell, g, _ = mm_grid_shape(pts)
    assert g * g <= 4 * 2000 + 64
    assert rel_err(cpp_mm(pts)[0].delta, cpp_aps(pts)[0].delta) <= 1e-12


def test_mm_no_pair_under_cell_uses_fallback():
    # tall thin box: scaled bound is far below the true spacing
    pts = [(0.0, 0.0), (1e-3, 0.5), (0.0, 1.0)]
    r, _ = cpp_mm(pts)
    assert r.delta == cpp_ap(pts)[0].delta


@pytest.mark.parametrize("mode", ["points", "distances"])
@pytest.mark.parametrize("seed", [0, 1, 99])
def test_rl_two_points(mode, seed):
    assert cpp_rl([(0, 0), (1, 1)], seed, mode)[0].delta == math.sqrt(2)


@pytest.mark.parametrize("mode", ["points", "distances"])
def test_rl_duplicates_short_circuit(mode):
    pts = [(0.25, 0.75)] * 9
    r, c = cpp_rl(pts, 3, mode)
    assert r.delta == 0.0 and r.has_duplicates
    # only the sampling step ran
    assert c.outer_iterations <= 2


def test_rl_unknown_mode():
    with pytest.raises(ValueError, match="sampling mode"):
        cpp_rl([(0, 0), (1, 1)], 0, "cells")


@pytest.mark.parametrize("mode", ["points", "distances"])
def test_rl_uniform_65536(mode):
    pts = gen_uniform(65536, 11)
    want = cpp_aps(pts)[0].delta
    assert rel_err(cpp_rl(pts, 11, mode)[0].delta, want) <= 1e-12


def test_km_two_point_trace():
    r, c = cpp_km([(0, 0), (1, 1)], 0)
    assert r.delta == math.sqrt(2)
    # one sieve round with one distance, then two final-pass comparisons (one per direction)
    assert c.outer_iterations == 1 + 2
    assert c.distance_evaluations == 1 + 2


@pytest.mark.parametrize("seed", range(8))
def test_km_far_points_sieved_in_first_round(seed):
    pts = [(0.05, 0.05), (0.95, 0.05), (0.5, 0.5), (0.5001, 0.5), (0.05, 0.95), (0.95, 0.95)]
    r, c = cpp_km(pts, seed)
    assert r.delta == pytest.approx(1e-4, rel=1e-9)
    rounds = c.outer_iterations - len(pts)
    final_pass = 2
    if rounds == 1:
        # a pair point was picked: at cell d/3 its partner is isolated too
        assert c.distance_evaluations == 5 + final_pass
    else:
        # a far point was picked: only the pair survives into round 2
        assert rounds == 2
        assert c.distance_evaluations == 5 + 1 + final_pass


def test_km_first_round_keeps_only_the_pair():
    arr = np.array([(0.05, 0.05), (0.95, 0.05), (0.5, 0.5), (0.5001, 0.5), (0.05, 0.95), (0.95, 0.95)])
    d = math.dist(arr[0], arr[2])
    assert sieve_round(arr, np.arange(6), d / 3).tolist() == [2, 3]


def _sieve_oracle(arr, survivors, cell):
    cells = {int(p): cell_index(arr[p], cell) for p in survivors}
    return [
        int(p)
        for p in survivors
        if any(
            q != p and max(abs(cells[p][0] - cells[q][0]), abs(cells[p][1] - cells[q][1])) <= 1
            for q in cells
        )
    ]


@given(point_sets(min_size=1, max_size=60), st.floats(min_value=0.005, max_value=0.4))
def test_sieve_round_drops_exactly_isolated_points(pts, cell):
    arr = np.asarray(pts, dtype=float)
    survivors = np.arange(len(arr))
    assert sieve_round(arr, survivors, cell).tolist() == _sieve_oracle(arr, survivors, cell)


def test_km_truncated_normal_32768():
    pts = gen_truncated_normal(32768, Point(0.5, 0.5), 0.2, 5)
    assert rel_err(cpp_km(pts, 5)[0].delta, cpp_aps(pts)[0].delta) <= 1e-12


ALGOS = {
    "mm": lambda p, s: cpp_mm(p),
    "rl_points": lambda p, s: cpp_rl(p, s, "points"),
    "rl_distances": lambda p, s: cpp_rl(p, s, "distances"),
    "km": lambda p, s: cpp_km(p, s),
}


@pytest.mark.parametrize("name", ALGOS)
@given(pts=point_sets(), seed=st.integers(0, 2**32))
def test_oracle_equivalence_small(name, pts, seed):
    r, c = ALGOS[name](pts, seed)
    assert rel_err(r.delta, brute_min(pts)) <= 1e-12
    assert c.distance_evaluations <= c.inner_iterations


@pytest.mark.parametrize("name", ALGOS)
def test_oracle_equivalence_random_instances(name):
    rng = np.random.default_rng(17)
    for k in range(120):
        n = int(rng.integers(2, 4097)) if k % 10 == 0 else int(rng.integers(2, 400))
        if k % 2:
            pts = gen_truncated_normal(n, Point(0.5, 0.5), 0.2, k)
        else:
            pts = gen_uniform(n, k)
        assert rel_err(ALGOS[name](pts, k)[0].delta, cpp_ap(pts)[0].delta) <= 1e-12


def test_determinism():
    pts = gen_uniform(5000, 8)
    assert cpp_mm(pts) == cpp_mm(pts)
    for mode in ("points", "distances"):
        assert cpp_rl(pts, 4, mode) == cpp_rl(pts, 4, mode)
    assert cpp_km(pts, 4) == cpp_km(pts, 4)
    rng_a, rng_b = np.random.default_rng(1), np.random.default_rng(1)
    assert cpp_km(pts, rng_a) == cpp_km(pts, rng_b)


def test_km_terminates_with_tiny_cells():
    # sieve cells near 4e-17: 1.0 and its predecessor must still land in different cells
    pts = [(0.9999999999999999, 0.1), (5e-324, 1e-08), (1.4e-45, 0.0), (1e-08, 5e-324),
           (5e-324, 0.5), (1e-17, 1e-300), (1.0, 0.1)]
    for seed in range(20):
        assert cpp_km(pts, seed)[0].delta == brute_min(pts)


@settings(max_examples=300)
@given(st.lists(st.tuples(extreme, extreme), min_size=2, max_size=25), st.integers(0, 1000))
def test_all_algorithms_on_extreme_coordinates(pts, seed):
    want = brute_min(pts)
    runs = {name: fn(pts, seed) for name, fn in ALGORITHMS_ALL.items()}
    runs["rl_points"] = cpp_rl(pts, seed, "points")
    for name, (r, _) in runs.items():
        assert rel_err(r.delta, want) <= 1e-12, name
