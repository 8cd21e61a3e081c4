"""All-pairs scans: brute force and the x-sorted early-exit variant."""

from __future__ import annotations

import math

import numpy as np

from .geometry import ClosestPairResult, OpCounters, PointsLike, as_array, make_result

__all__ = ["cpp_ap", "cpp_aps"]


def cpp_ap(points: PointsLike) -> tuple[ClosestPairResult, OpCounters]:
    """Compare all n(n-1)/2 pairs.

    Each outer iteration evaluates its whole row of partners at once; the first
    minimum of a row only replaces the incumbent if strictly smaller, which is
    exactly the pair a scalar nested loop with ``<`` would keep.
    """
    arr = as_array(points)
    n = len(arr)
    xs = arr[:, 0]
    ys = arr[:, 1]
    best = math.inf
    bi = bj = -1
    for i in range(n - 1):
        dx = xs[i] - xs[i + 1:]
        dy = ys[i] - ys[i + 1:]
        d = np.sqrt(dx * dx + dy * dy)
        k = int(d.argmin())
        if d[k] < best:
            best = float(d[k])
            bi, bj = i, i + 1 + k
    pairs = n * (n - 1) // 2
    counters = OpCounters(n - 1, pairs, pairs)
    return make_result(xs, ys, bi, bj), counters


def scan_all_pairs(
    xs: list[float],
    ys: list[float],
    idx: list[int],
    counters: OpCounters,
) -> tuple[float, int, int]:
    """Scalar brute force over the points ``idx``; returns ``(delta, i, j)``.

    Used for the tiny subproblems of other algorithms where vectorising does
    not pay off.
    """
    best = math.inf
    bi = bj = -1
    m = len(idx)
    for a in range(m - 1):
        i = idx[a]
        xi = xs[i]
        yi = ys[i]
        for b in range(a + 1, m):
            j = idx[b]
            dx = xi - xs[j]
            dy = yi - ys[j]
            d = math.sqrt(dx * dx + dy * dy)
            if d < best:
                best, bi, bj = d, i, j
    if m >= 2:
        pairs = m * (m - 1) // 2
        counters.outer_iterations += m - 1
        counters.inner_iterations += pairs
        counters.distance_evaluations += pairs
    return best, bi, bj


def x_order(arr: np.ndarray) -> np.ndarray:
    """Indices sorted by (x, y, input index)."""
    return np.lexsort((np.arange(len(arr)), arr[:, 1], arr[:, 0]))


def cpp_aps(points: PointsLike) -> tuple[ClosestPairResult, OpCounters]:
    """Sort by x, then scan each point's successors while their x-gap is at most delta.

    The inner loop stops at the first successor farther right than the
    current delta; since delta only shrinks, none of the remaining successors
    can improve it. Worst case stays quadratic, e.g. all points on one
    vertical line.
    """
    arr = as_array(points)
    n = len(arr)
    order = x_order(arr)
    qx = arr[order, 0].tolist()
    qy = arr[order, 1].tolist()

    delta = math.inf
    bi = bj = -1
    inner = 0
    sqrt = math.sqrt
    for i in range(n - 1):
        xi = qx[i]
        yi = qy[i]
        j = i + 1
        while j < n and qx[j] - xi <= delta:
            dx = xi - qx[j]
            dy = yi - qy[j]
            d = sqrt(dx * dx + dy * dy)
            if d < delta:
                delta, bi, bj = d, i, j
            j += 1
        inner += j - i - 1
    counters = OpCounters(n - 1, inner, inner)
    return make_result(arr[:, 0], arr[:, 1], int(order[bi]), int(order[bj])), counters
