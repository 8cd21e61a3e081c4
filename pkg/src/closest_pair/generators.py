"""Seeded point-cloud generators for the benchmark inputs.

All randomness comes from numpy's PCG64 bit generator. Normal variates are
produced by the Box-Muller transform on top of it (rather than numpy's
ziggurat sampler) so the truncated-normal streams depend only on the PCG64
stream and this file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.stats import qmc

from .geometry import Point
from .packing import delta_bar

__all__ = [
    "GenSpec",
    "DISTRIBUTIONS",
    "make_rng",
    "gen_uniform",
    "gen_truncated_normal",
    "gen_adversarial_mm",
    "generate",
    "truncated_normal_acceptance",
]

Distribution = Literal["uniform", "truncated_normal", "adversarial_mm"]
DISTRIBUTIONS: tuple[str, ...] = ("uniform", "truncated_normal", "adversarial_mm")

# acceptance probabilities below this are treated as a stalled sampler
MIN_ACCEPTANCE = 1e-12
# candidate draws allowed per requested point before giving up
_ATTEMPTS_PER_POINT = 10_000


@dataclass(frozen=True)
class GenSpec:
    n: int
    distribution: Distribution = "uniform"
    mu: Point = Point(0.5, 0.5)
    sigma: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.distribution == "truncated_normal" and not self.sigma > 0:
            raise ValueError("sigma must be positive")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _check_n(n: int, minimum: int = 2) -> None:
    if n < minimum:
        raise ValueError(f"n must be at least {minimum}")


def gen_uniform(n: int, seed: int) -> np.ndarray:
    """n i.i.d. points uniform on [0, 1)^2."""
    _check_n(n)
    return make_rng(seed).random((n, 2))


def _box_muller(rng: np.random.Generator, m: int) -> np.ndarray:
    """``m`` pairs of independent standard normals, one pair per row."""
    u1 = 1.0 - rng.random(m)  # (0, 1], keeps log finite
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * math.pi * u2
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def truncated_normal_acceptance(mu: Point, sigma: float) -> float:
    """Probability that a N(mu, sigma^2 I) draw lands in the unit square."""

    def mass(m: float) -> float:
        return 0.5 * (math.erf((1.0 - m) / (sigma * math.sqrt(2.0))) - math.erf(-m / (sigma * math.sqrt(2.0))))

    return mass(mu[0]) * mass(mu[1])


def gen_truncated_normal(
    n: int,
    mu: Point = Point(0.5, 0.5),
    sigma: float = 0.2,
    seed: int = 0,
) -> np.ndarray:
    """n points from N(mu, diag(sigma^2, sigma^2)) restricted to [0, 1]^2 by rejection."""
    _check_n(n)
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    accept = truncated_normal_acceptance(mu, sigma)
    if accept < MIN_ACCEPTANCE:
        raise RuntimeError("rejection sampling stalled")
    rng = make_rng(seed)
    out = np.empty((n, 2))
    filled = 0
    budget = _ATTEMPTS_PER_POINT * n
    drawn = 0
    while filled < n:
        if drawn >= budget:
            raise RuntimeError("rejection sampling stalled")
        m = max(64, int(1.1 * (n - filled) / accept))
        cand = _box_muller(rng, m) * sigma + np.asarray(mu, dtype=np.float64)
        drawn += m
        ok = cand[((cand >= 0.0) & (cand <= 1.0)).all(axis=1)]
        take = min(len(ok), n - filled)
        out[filled:filled + take] = ok[:take]
        filled += take
    return out


def gen_adversarial_mm(n: int) -> np.ndarray:
    """Worst case for cppMM: n - 4 points packed into a single grid cell.

    Four anchors at the edge midpoints pin the bounding box to the unit
    square, so the grid cell size is the unscaled packing bound. The other
    points follow an unscrambled Halton sequence inside the cell that holds
    the centre of the square.
    """
    _check_n(n, 6)
    cell = delta_bar(n).delta_bar
    g = math.ceil(1.0 / cell)
    k = min(math.floor(0.5 / cell), g - 1)
    lo = k * cell
    hi = min(lo + cell, 1.0)
    inner = qmc.Halton(d=2, scramble=False).random(n - 4)
    # stay clear of the cell borders so rounding never moves a point out
    span = hi - lo
    inner = lo + span * (0.05 + 0.9 * inner)
    anchors = np.array([[0.0, 0.5], [1.0, 0.5], [0.5, 0.0], [0.5, 1.0]])
    return np.vstack((anchors, inner))


def generate(spec: GenSpec) -> np.ndarray:
    if spec.distribution == "uniform":
        return gen_uniform(spec.n, spec.seed)
    if spec.distribution == "truncated_normal":
        return gen_truncated_normal(spec.n, spec.mu, spec.sigma, spec.seed)
    return gen_adversarial_mm(spec.n)
