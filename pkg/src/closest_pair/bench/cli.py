"""``bench`` command line: run, verify, plot, gen."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from .. import ALGORITHMS
from ..generators import GenSpec, generate
from ..geometry import Point, write_points
from .harness import (
    AP_CAP,
    DEFAULT_NMAX,
    VERIFY_NMAX,
    BenchConfig,
    VerifyConfig,
    doubling_sizes,
    run_benchmark,
    verify,
)
from .plot import PLOT_KINDS, emit_plot
from .records import read_csv, write_csv, write_summary_csv

log = logging.getLogger("closest_pair.bench")

DIST_ALIASES = {
    "uniform": "uniform",
    "tnormal": "truncated_normal",
    "truncated_normal": "truncated_normal",
    "adversarial": "adversarial_mm",
    "adversarial_mm": "adversarial_mm",
}
HUGE_NMAX = 2**25

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_IO = 0, 1, 2


def _algos(text: str) -> tuple[str, ...]:
    if text == "all":
        return tuple(ALGORITHMS)
    names = tuple(a.strip() for a in text.split(",") if a.strip())
    unknown = [a for a in names if a not in ALGORITHMS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown algorithm(s) {','.join(unknown)}")
    return names


def _dist(text: str) -> str:
    try:
        return DIST_ALIASES[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown distribution {text!r}") from None


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


def _point(text: str) -> Point:
    x, y = _floats(text)
    return Point(x, y)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="time algorithms over doubling n and write a CSV")
    run.add_argument("--algos", type=_algos, default=tuple(ALGORITHMS))
    run.add_argument("--dist", type=_dist, default="uniform")
    run.add_argument("--sigma", type=_floats, default=[0.2],
                     help="one value, or a comma list for a sigma sweep")
    run.add_argument("--mu", type=_point, default=Point(0.5, 0.5))
    run.add_argument("--nmin", type=int, default=1024)
    run.add_argument("--nmax", type=int, default=2**14)
    run.add_argument("--reps", type=int, default=10)
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--ap-cap", type=int, default=AP_CAP, help="largest n for cppAP")
    run.add_argument("--no-warmup", action="store_true")
    run.add_argument("--allow-huge", action="store_true",
                     help=f"permit nmax above {DEFAULT_NMAX} (up to {HUGE_NMAX})")
    run.add_argument("--out", required=True)
    run.add_argument("--summary", help="also write per-size sums and means here")

    ver = sub.add_parser("verify", help="check algorithms against the brute-force oracle")
    ver.add_argument("--algos", type=_algos, default=tuple(ALGORITHMS))
    ver.add_argument("--dist", type=_dist, default="uniform")
    ver.add_argument("--sigma", type=float, default=0.2)
    ver.add_argument("--nmin", type=int, default=2)
    ver.add_argument("--nmax", type=int, default=VERIFY_NMAX)
    ver.add_argument("--seeds", type=int, default=100)
    ver.add_argument("--seed", type=int, default=0)

    plot = sub.add_parser("plot", help="render a CSV as an SVG chart")
    plot.add_argument("--kind", choices=PLOT_KINDS, default="runtime_loglog")
    plot.add_argument("--in", dest="infile", required=True)
    plot.add_argument("--out", required=True)
    plot.add_argument("--title")

    gen = sub.add_parser("gen", help="write a generated point set")
    gen.add_argument("--dist", type=_dist, default="uniform")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--sigma", type=float, default=0.2)
    gen.add_argument("--mu", type=_point, default=Point(0.5, 0.5))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    limit = HUGE_NMAX if args.allow_huge else DEFAULT_NMAX
    if args.nmax > limit:
        log.error("nmax %d exceeds %d (use --allow-huge up to %d)", args.nmax, limit, HUGE_NMAX)
        return EXIT_IO
    threads = os.environ.get("BENCH_THREADS", "1")
    if threads != "1":
        log.warning("BENCH_THREADS=%s ignored: timed runs are sequential", threads)
    sigmas = args.sigma if args.dist == "truncated_normal" else args.sigma[:1]
    records = []
    for sigma in sigmas:
        config = BenchConfig(
            algorithms=args.algos,
            n_min=args.nmin,
            n_max=args.nmax,
            reps=args.reps,
            distribution=args.dist,
            sigma=sigma,
            mu=args.mu,
            seed_base=args.seed,
            output_path=args.out,
            ap_cap=args.ap_cap,
            warmup=not args.no_warmup,
        )
        records.extend(run_benchmark(config))
    write_csv(records, args.out)
    if args.summary:
        write_summary_csv(records, args.summary)
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    config = VerifyConfig(
        algorithms=args.algos,
        sizes=tuple(doubling_sizes(args.nmin, args.nmax)),
        seeds=args.seeds,
        distribution=args.dist,
        sigma=args.sigma,
        seed_base=args.seed,
    )
    report = verify(config)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _cmd_plot(args: argparse.Namespace) -> int:
    emit_plot(read_csv(args.infile), args.kind, args.out, title=args.title)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    points = generate(GenSpec(args.n, args.dist, args.mu, args.sigma, args.seed))
    write_points(points, args.out)
    print(f"wrote {len(points)} points to {args.out}")
    return EXIT_OK


COMMANDS = {"run": _cmd_run, "verify": _cmd_verify, "plot": _cmd_plot, "gen": _cmd_gen}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, RuntimeError) as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
