"""The two O(n log n) baselines: divide and conquer, and plane sweep."""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from typing import Callable, Optional

import numpy as np
from sortedcontainers import SortedList

from .geometry import ClosestPairResult, OpCounters, PointsLike, as_array, make_result
from .naive import scan_all_pairs, x_order

__all__ = ["cpp_dc", "cpp_ps"]

FrameHook = Callable[[np.ndarray, float], None]


def cpp_dc(
    points: PointsLike,
    on_frame: Optional[FrameHook] = None,
) -> tuple[ClosestPairResult, OpCounters]:
    """Divide and conquer over the x-sorted array with a presorted y-order.

    Frames hold a contiguous range of x-ranks plus the same points in y-order.
    Points are split by x-rank, so points sharing the median x-coordinate are
    divided consistently with the x-array. The stripe phase pairs every left
    point within delta of the median with the right points in a +-delta
    y-window located by binary search.

    *on_frame*, if given, is called with the input indices of each frame and
    the frame's delta after it is solved.
    """
    arr = as_array(points)
    n = len(arr)
    order = x_order(arr)
    qx = arr[order, 0].tolist()
    qy = arr[order, 1].tolist()
    # positions are x-ranks; (y, rank) ordering == (y, x, input index) ordering
    positions = np.arange(n)
    y_sorted = np.lexsort((positions, arr[order, 1])).tolist()
    counters = OpCounters()
    sqrt = math.sqrt

    def solve(first: int, last: int, ys_order: list[int]) -> tuple[float, int, int]:
        if last - first + 1 <= 3:
            found = scan_all_pairs(qx, qy, list(range(first, last + 1)), counters)
        else:
            m = (first + last) // 2
            mid_x = qx[m]
            left_y = [p for p in ys_order if p <= m]
            right_y = [p for p in ys_order if p > m]
            dl = solve(first, m, left_y)
            dr = solve(m + 1, last, right_y)
            delta, bi, bj = dl if dl[0] < dr[0] else dr

            lo = bisect_left(qx, mid_x - delta, first, m + 1)
            bound = mid_x + delta
            stripe = [p for p in right_y if qx[p] <= bound]
            stripe_y = [qy[p] for p in stripe]
            counters.outer_iterations += m + 1 - lo
            for p1 in range(lo, m + 1):
                x1 = qx[p1]
                y1 = qy[p1]
                a = bisect_left(stripe_y, y1 - delta)
                b = bisect_right(stripe_y, y1 + delta)
                counters.inner_iterations += b - a
                counters.distance_evaluations += b - a
                for k in range(a, b):
                    p2 = stripe[k]
                    dx = x1 - qx[p2]
                    dy = y1 - qy[p2]
                    d = sqrt(dx * dx + dy * dy)
                    if d < delta:
                        delta, bi, bj = d, p1, p2
            found = (delta, bi, bj)
        if on_frame is not None:
            on_frame(order[first:last + 1], found[0])
        return found

    _, bi, bj = solve(0, n - 1, y_sorted)
    return make_result(arr[:, 0], arr[:, 1], int(order[bi]), int(order[bj])), counters


def cpp_ps(
    points: PointsLike,
    check_invariants: bool = False,
) -> tuple[ClosestPairResult, OpCounters]:
    """Plane sweep with an x-ordered queue and a y-ordered active window.

    The y-table holds ``(y, x, rank)`` keys of the points left of the sweep
    line that are closer than delta in x. With *check_invariants* every
    comparison phase first asserts that the window only holds such points.
    """
    arr = as_array(points)
    n = len(arr)
    order = x_order(arr)
    qx = arr[order, 0].tolist()
    qy = arr[order, 1].tolist()
    sqrt = math.sqrt

    dx = qx[0] - qx[1]
    dy = qy[0] - qy[1]
    delta = sqrt(dx * dx + dy * dy)
    bi, bj = 0, 1
    counters = OpCounters(0, 1, 1)
    table = SortedList([(qy[0], qx[0], 0), (qy[1], qx[1], 1)])
    tail = 0
    for i in range(2, n):
        cx = qx[i]
        cy = qy[i]
        # compare the gap itself: cx - delta can round up to a point's x
        while tail < i and cx - qx[tail] >= delta:
            table.remove((qy[tail], qx[tail], tail))
            tail += 1
        if check_invariants:
            stale = [key for key in table if not cx - key[1] < delta]
            assert not stale, f"active window holds stale points {stale}"
        candidates = [
            key
            for key in table.irange((cy - delta,), (cy + delta, math.inf, math.inf))
            if abs(key[0] - cy) < delta
        ]
        counters.outer_iterations += 1
        counters.inner_iterations += len(candidates)
        counters.distance_evaluations += len(candidates)
        for py, px, p in candidates:
            dx = cx - px
            dy = cy - py
            d = sqrt(dx * dx + dy * dy)
            if d < delta:
                delta, bi, bj = d, i, p
        table.add((cy, cx, i))
    return make_result(arr[:, 0], arr[:, 1], int(order[bi]), int(order[bj])), counters
