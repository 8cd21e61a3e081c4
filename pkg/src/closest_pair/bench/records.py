"""CSV persistence of benchmark records and per-size aggregates."""

from __future__ import annotations

import csv
import os
from collections import defaultdict
from dataclasses import dataclass
from statistics import fmean
from typing import Iterable, Optional, Union

from ..geometry import OpCounters
from .harness import BenchRecord

__all__ = ["CSV_HEADER", "write_csv", "read_csv", "Aggregate", "aggregate", "write_summary_csv"]

PathLike = Union[str, os.PathLike]

CSV_HEADER = (
    "algorithm",
    "n",
    "distribution",
    "sigma",
    "seed",
    "elapsed_us",
    "outer_iters",
    "inner_iters",
    "dist_evals",
    "delta",
)


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.17g}"


def write_csv(records: Iterable[BenchRecord], path: PathLike) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for r in records:
                c = r.counters
                writer.writerow(
                    (
                        r.algorithm,
                        r.n,
                        r.distribution,
                        _fmt(r.sigma),
                        r.seed,
                        repr(r.elapsed_us),
                        c.outer_iterations,
                        c.inner_iterations,
                        c.distance_evaluations,
                        _fmt(r.delta),
                    )
                )
    except OSError as exc:
        raise OSError(f"cannot write {os.fspath(path)}: {exc.strerror or exc}") from exc


def read_csv(path: PathLike) -> list[BenchRecord]:
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if tuple(reader.fieldnames or ()) != CSV_HEADER:
                raise ValueError(f"{os.fspath(path)}: unexpected header {reader.fieldnames}")
            return [
                BenchRecord(
                    algorithm=row["algorithm"],
                    n=int(row["n"]),
                    distribution=row["distribution"],
                    sigma=float(row["sigma"]) if row["sigma"] else None,
                    seed=int(row["seed"]),
                    elapsed_us=float(row["elapsed_us"]),
                    counters=OpCounters(
                        int(row["outer_iters"]),
                        int(row["inner_iters"]),
                        int(row["dist_evals"]),
                    ),
                    delta=float(row["delta"]),
                )
                for row in reader
            ]
    except OSError as exc:
        raise OSError(f"cannot read {os.fspath(path)}: {exc.strerror or exc}") from exc


@dataclass(frozen=True)
class Aggregate:
    algorithm: str
    n: int
    distribution: str
    sigma: Optional[float]
    reps: int
    sum_elapsed_us: float
    mean_elapsed_us: float
    mean_i2: float
    mean_dist_evals: float


def aggregate(records: Iterable[BenchRecord]) -> list[Aggregate]:
    """Group by (algorithm, n, distribution, sigma); both the sum and the mean time are kept."""
    groups = defaultdict(list)
    for r in records:
        groups[(r.algorithm, r.n, r.distribution, r.sigma)].append(r)
    out = []
    for (algo, n, dist, sigma), rs in groups.items():
        times = [r.elapsed_us for r in rs]
        out.append(
            Aggregate(
                algo,
                n,
                dist,
                sigma,
                len(rs),
                sum(times),
                fmean(times),
                fmean(r.counters.mean_inner_per_outer for r in rs),
                fmean(r.counters.distance_evaluations for r in rs),
            )
        )
    out.sort(key=lambda a: (a.algorithm, a.distribution, a.sigma or 0.0, a.n))
    return out


def write_summary_csv(records: Iterable[BenchRecord], path: PathLike) -> None:
    rows = aggregate(records)
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ("algorithm", "n", "distribution", "sigma", "reps",
                 "sum_elapsed_us", "mean_elapsed_us", "mean_i2", "mean_dist_evals")
            )
            for a in rows:
                writer.writerow(
                    (a.algorithm, a.n, a.distribution, _fmt(a.sigma), a.reps,
                     repr(a.sum_elapsed_us), repr(a.mean_elapsed_us), repr(a.mean_i2), repr(a.mean_dist_evals))
                )
    except OSError as exc:
        raise OSError(f"cannot write {os.fspath(path)}: {exc.strerror or exc}") from exc
