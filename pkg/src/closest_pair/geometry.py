"""Points, distances, bounding boxes and the result contract shared by every algorithm."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

__all__ = [
    "Point",
    "ClosestPairResult",
    "BoundingBox",
    "OpCounters",
    "euclidean_distance",
    "squared_distance",
    "bounding_box",
    "as_array",
    "read_points",
    "write_points",
]


class Point(NamedTuple):
    x: float
    y: float


PointsLike = Union[np.ndarray, Sequence[Sequence[float]]]


@dataclass(frozen=True)
class ClosestPairResult:
    """Two closest input points, their input indices and their distance."""

    first: Point
    second: Point
    delta: float
    first_index: int
    second_index: int

    @property
    def indices(self) -> tuple[int, int]:
        return self.first_index, self.second_index

    @property
    def has_duplicates(self) -> bool:
        return self.delta == 0.0


@dataclass(frozen=True)
class BoundingBox:
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    @property
    def w(self) -> float:
        return self.max_x - self.min_x

    @property
    def h(self) -> float:
        return self.max_y - self.min_y

    @property
    def origin(self) -> Point:
        return Point(self.min_x, self.min_y)


@dataclass
class OpCounters:
    """Loop instrumentation of one algorithm run.

    ``outer_iterations`` counts executed outer-loop bodies, ``inner_iterations``
    counts executed inner-loop bodies (candidate pairs looked at) and
    ``distance_evaluations`` counts Euclidean distances actually computed.
    """

    outer_iterations: int = 0
    inner_iterations: int = 0
    distance_evaluations: int = 0

    @property
    def mean_inner_per_outer(self) -> float:
        """Mean inner-loop bodies per outer iteration (the I2 growth diagnostic)."""
        if self.outer_iterations == 0:
            return 0.0
        return self.inner_iterations / self.outer_iterations

    def __iadd__(self, other: OpCounters) -> OpCounters:
        self.outer_iterations += other.outer_iterations
        self.inner_iterations += other.inner_iterations
        self.distance_evaluations += other.distance_evaluations
        return self


def euclidean_distance(p: Sequence[float], q: Sequence[float]) -> float:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return math.sqrt(dx * dx + dy * dy)


def squared_distance(p: Sequence[float], q: Sequence[float]) -> float:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def bounding_box(points: PointsLike) -> BoundingBox:
    arr = np.asarray(points, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("empty point set")
    arr = arr.reshape(-1, 2)
    lo = arr.min(axis=0)
    hi = arr.max(axis=0)
    return BoundingBox(float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]))


def as_array(points: PointsLike, *, min_points: int = 2) -> np.ndarray:
    """Validate *points* and return them as a C-contiguous ``(n, 2)`` float64 array."""
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        else:
            raise ValueError(f"expected an (n, 2) array of points, got shape {arr.shape}")
    if len(arr) < min_points:
        raise ValueError("need at least two points")
    if not np.isfinite(arr).all():
        raise ValueError("points must have finite coordinates")
    return arr


def make_result(xs: Sequence[float], ys: Sequence[float], i: int, j: int) -> ClosestPairResult:
    p = Point(float(xs[i]), float(ys[i]))
    q = Point(float(xs[j]), float(ys[j]))
    return ClosestPairResult(p, q, euclidean_distance(p, q), int(i), int(j))


def write_points(points: PointsLike, path: Union[str, os.PathLike]) -> None:
    """Write one ``x,y`` line per point with round-trip (17 significant digit) precision."""
    arr = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    with open(path, "w", newline="\n") as fh:
        for x, y in arr.tolist():
            fh.write(f"{x:.17g},{y:.17g}\n")


def read_points(path: Union[str, os.PathLike]) -> np.ndarray:
    rows: list[tuple[float, float]] = []
    with open(path) as fh:
        for lineno, line in enumerate(_nonblank(fh), start=1):
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'x,y', got {line!r}")
            rows.append((float(parts[0]), float(parts[1])))
    return np.array(rows, dtype=np.float64).reshape(-1, 2)


def _nonblank(lines: Iterable[str]) -> Iterable[str]:
    for line in lines:
        line = line.strip()
        if line:
            yield line
