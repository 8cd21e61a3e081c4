"""Upper bound on the largest achievable minimal distance of n points in the unit square.

The bound is the minimum of two closed-form terms taken from optimal circle
packing theory. It shrinks like 1/sqrt(n), which is what makes it usable as
the cell size of an O(n)-cell grid in :func:`closest_pair.grids.cpp_mm`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["PackingBound", "c_n", "delta_bar"]

_SQRT3 = math.sqrt(3.0)
_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class PackingBound:
    n: int
    u1: float
    u2: float
    delta_bar: float

    @property
    def cells_per_side(self) -> int:
        """Side length of the grid over the unit square with cells of size ``delta_bar``."""
        return math.ceil(1.0 / self.delta_bar)


def _check_n(n: int) -> int:
    if int(n) != n:
        raise TypeError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < 2:
        raise ValueError("n too small")
    return n


def c_n(n: int) -> int:
    n = _check_n(n)
    if 3 <= n <= 6:
        return n - 2
    if 7 <= n <= 9:
        return n - 1
    return 3 * (n // 2) - 5 + n % 2


def delta_bar(n: int) -> PackingBound:
    """Evaluate both bound terms for *n* points and return their minimum.

    If the first term's denominator is not positive (possible only for tiny n)
    that term is reported as ``inf`` and the bound falls back to the second term.
    """
    n = _check_n(n)
    radicand = (
        n * math.pi
        + c_n(n) * (_SQRT3 - _HALF_PI)
        + (4 * math.isqrt(n) - 2) * (2.0 - _HALF_PI)
    )
    denom = math.sqrt(radicand) - 2.0 if radicand > 0 else -1.0
    u1 = 2.0 / denom if denom > 0 else math.inf
    u2 = (1.0 + math.sqrt(1.0 + (n - 1) * 2.0 / _SQRT3)) / (n - 1)
    return PackingBound(n=n, u1=u1, u2=u2, delta_bar=min(u1, u2))
