"""Benchmark harness: timed runs, oracle verification, CSV records and SVG plots."""

from .harness import (
    BenchConfig,
    BenchRecord,
    VerifyConfig,
    VerifyReport,
    instance_seed,
    run_benchmark,
    verify,
    verify_instances,
)
from .plot import emit_plot
from .records import aggregate, read_csv, write_csv, write_summary_csv

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "VerifyConfig",
    "VerifyReport",
    "aggregate",
    "emit_plot",
    "instance_seed",
    "read_csv",
    "run_benchmark",
    "verify",
    "verify_instances",
    "write_csv",
    "write_summary_csv",
]
