"""Timed runs over doubling problem sizes and the brute-force verification sweep."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional

import numpy as np

from .. import ALGORITHMS
from ..generators import DISTRIBUTIONS, GenSpec, generate
from ..geometry import ClosestPairResult, OpCounters, Point, PointsLike
from ..naive import cpp_ap

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "VerifyConfig",
    "VerifyReport",
    "doubling_sizes",
    "instance_seed",
    "run_benchmark",
    "verify",
    "verify_instances",
]

log = logging.getLogger(__name__)

Algorithm = Callable[..., tuple[ClosestPairResult, OpCounters]]

AP_CAP = 2**17
DEFAULT_NMAX = 2**20
VERIFY_NMAX = 2**13
TOLERANCE = 1e-12


def doubling_sizes(n_min: int, n_max: int) -> list[int]:
    sizes = []
    n = n_min
    while n <= n_max:
        sizes.append(n)
        n *= 2
    return sizes


def instance_seed(seed_base: int, n: int, rep: int) -> int:
    """Seed of instance *rep* at size *n*, mixed from the base seed."""
    state = np.random.SeedSequence([seed_base, n, rep]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _resolve(names: Iterable[str], extra: Optional[Mapping[str, Algorithm]]) -> dict[str, Algorithm]:
    table = dict(ALGORITHMS)
    if extra:
        table.update(extra)
    out = {}
    for name in names:
        if name not in table:
            raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(table)}")
        out[name] = table[name]
    return out


@dataclass(frozen=True)
class BenchConfig:
    algorithms: tuple[str, ...] = ("aps", "mm")
    n_min: int = 1024
    n_max: int = 1024
    reps: int = 10
    distribution: str = "uniform"
    sigma: float = 0.2
    mu: Point = Point(0.5, 0.5)
    seed_base: int = 42
    output_path: Optional[str] = None
    ap_cap: int = AP_CAP
    warmup: bool = True

    def __post_init__(self):
        if self.n_min < 2:
            raise ValueError("n_min must be at least 2")
        if self.n_min > self.n_max:
            raise ValueError("n_min must not exceed n_max")
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.seed_base < 0:
            raise ValueError("seed_base must be non-negative")

    @property
    def sizes(self) -> list[int]:
        return doubling_sizes(self.n_min, self.n_max)

    def spec(self, n: int, rep: int) -> GenSpec:
        return GenSpec(n, self.distribution, self.mu, self.sigma, instance_seed(self.seed_base, n, rep))


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    n: int
    distribution: str
    sigma: Optional[float]
    seed: int
    elapsed_us: float
    counters: OpCounters
    delta: float

    @property
    def has_duplicates(self) -> bool:
        return self.delta == 0.0


def run_benchmark(
    config: BenchConfig,
    extra: Optional[Mapping[str, Algorithm]] = None,
) -> list[BenchRecord]:
    """Time every selected algorithm on the same instances.

    Only the algorithm call sits inside the timed region. The first instance
    of each size is also run once untimed per algorithm as a warm-up. Runs
    that exhaust memory or recursion are logged and skipped.
    """
    algos = _resolve(config.algorithms, extra)
    sigma = config.sigma if config.distribution == "truncated_normal" else None
    records = []
    for n in config.sizes:
        warmed = set()
        for rep in range(config.reps):
            spec = config.spec(n, rep)
            try:
                points = generate(spec)
            except MemoryError:
                log.error("n=%d rep=%d: out of memory while generating", n, rep)
                continue
            for name, fn in algos.items():
                if name == "ap" and n > config.ap_cap:
                    continue
                try:
                    if config.warmup and name not in warmed:
                        fn(points, spec.seed)
                        warmed.add(name)
                    t0 = time.perf_counter_ns()
                    result, counters = fn(points, spec.seed)
                    t1 = time.perf_counter_ns()
                except (MemoryError, RecursionError) as exc:
                    log.error("%s n=%d rep=%d failed: %r", name, n, rep, exc)
                    continue
                records.append(
                    BenchRecord(
                        algorithm=name,
                        n=n,
                        distribution=config.distribution,
                        sigma=sigma,
                        seed=spec.seed,
                        elapsed_us=(t1 - t0) / 1000.0,
                        counters=counters,
                        delta=result.delta,
                    )
                )
            log.info("n=%d rep=%d done", n, rep)
    return records


@dataclass(frozen=True)
class VerifyConfig:
    algorithms: tuple[str, ...] = tuple(ALGORITHMS)
    sizes: tuple[int, ...] = tuple(doubling_sizes(2, VERIFY_NMAX))
    seeds: int = 100
    distribution: str = "uniform"
    sigma: float = 0.2
    mu: Point = Point(0.5, 0.5)
    seed_base: int = 0
    tolerance: float = TOLERANCE

    def __post_init__(self):
        if not self.sizes or min(self.sizes) < 2:
            raise ValueError("sizes must be non-empty and at least 2")
        if self.seeds < 1:
            raise ValueError("seeds must be at least 1")


@dataclass
class VerifyReport:
    tolerance: float
    instances: int = 0
    max_rel: dict[str, float] = field(default_factory=dict)
    failures: list[tuple[str, int, int, float, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [
            f"{name:>6}  max rel. discrepancy {err:.3e}  {'PASS' if err <= self.tolerance else 'FAIL'}"
            for name, err in self.max_rel.items()
        ]
        for name, n, seed, got, want in self.failures[:10]:
            out.append(f"  mismatch: {name} n={n} seed={seed} delta={got!r} oracle={want!r}")
        out.append(f"{'PASS' if self.passed else 'FAIL'} ({self.instances} instances)")
        return out


def relative_error(got: float, want: float) -> float:
    return abs(got - want) / max(want, 1e-300)


def _check(report: VerifyReport, algos: Mapping[str, Algorithm], n: int, seed: int, points) -> None:
    want = cpp_ap(points)[0].delta
    report.instances += 1
    for name, fn in algos.items():
        got = fn(points, seed)[0].delta
        err = relative_error(got, want)
        report.max_rel[name] = max(report.max_rel[name], err)
        if err > report.tolerance:
            report.failures.append((name, n, seed, got, want))


def verify(
    config: VerifyConfig,
    extra: Optional[Mapping[str, Algorithm]] = None,
) -> VerifyReport:
    """Compare every selected algorithm with the brute-force oracle on every instance."""
    algos = _resolve(config.algorithms, extra)
    report = VerifyReport(config.tolerance, max_rel={name: 0.0 for name in algos})
    for n in config.sizes:
        for rep in range(config.seeds):
            seed = instance_seed(config.seed_base, n, rep)
            points = generate(GenSpec(n, config.distribution, config.mu, config.sigma, seed))
            _check(report, algos, n, seed, points)
    return report


def verify_instances(
    instances: Iterable[PointsLike],
    algorithms: Iterable[str] = tuple(ALGORITHMS),
    extra: Optional[Mapping[str, Algorithm]] = None,
    tolerance: float = TOLERANCE,
    seed: int = 0,
) -> VerifyReport:
    """Like :func:`verify`, on explicit point sets (randomised algorithms get *seed*)."""
    algos = _resolve(algorithms, extra)
    report = VerifyReport(tolerance, max_rel={name: 0.0 for name in algos})
    for points in instances:
        _check(report, algos, len(points), seed, points)
    return report
