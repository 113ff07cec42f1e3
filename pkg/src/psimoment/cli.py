"""Command-line front end.

Subcommands: sieve, fixed, scaled, predict, reproduce.  Progress goes to
stderr, data to stdout or --out.  Exit codes: 0 success, 2 usage error,
3 numeric-range error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
import time

from . import __version__
from . import fixed as fixed_mod
from . import predictors, scaled as scaled_mod
from .errors import CheckpointError, NumericRangeError
from .report import MomentReport, MomentRow, emit, render_table
from .sieve import DEFAULT_SEGMENT_SIZE, MangoldtSieve, prime_count

LONG_RUN_SECONDS = 30 * 60

log = logging.getLogger("psimoment")


def _parse_ks(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(sorted(int(part) for part in text.split(",")))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad moment order list {text!r}")
    if not ks or any(k < 1 or k > 16 for k in ks):
        raise argparse.ArgumentTypeError("moment orders must be in 1..16")
    return ks


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=_parse_ks, default=(2, 4, 6),
                   help="comma-separated moment orders (default 2,4,6)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE)
    p.add_argument("--checkpoint", metavar="PATH")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="psimoment",
        description="Moments of prime counts in short intervals",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="smoke-test the segmented sieve")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--count", action="store_true",
                   help="print the prime count and summatory value at limit")

    p = sub.add_parser("fixed", help="fixed-length window moments")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--mode", choices=["sum", "integral"], default="sum")
    _add_run_flags(p)

    p = sub.add_parser("scaled", help="proportional-window moment integral")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    _add_run_flags(p)

    p = sub.add_parser("predict", help="evaluate asymptotic main terms")
    p.add_argument("--formula", choices=["ms", "thm-i", "thm-ii", "cramer"],
                   required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--h", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--k", type=_parse_ks, default=(2, 4, 6))
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=["csv", "json"])

    p = sub.add_parser("reproduce", help="reproduce a published table")
    p.add_argument("table", choices=["ms-table", "scaled-1e8", "scaled-1e10"])
    p.add_argument("--confirm-long", action="store_true")
    _add_run_flags(p)

    return ap


def _predictions(mode: str, x: float, param: float, k: int):
    """(predicted_thm, predicted_ms) for one row; None where no claim holds."""
    if k % 2:
        return None, None
    thm = ms = None
    if mode in ("fixed-sum", "fixed-integral"):
        try:
            thm = predictors.fixed_main_term(x, param, k)
        except ValueError:
            pass
        try:
            ms = predictors.fixed_main_term_from_one(x, param, k)
        except ValueError:
            pass
    else:
        try:
            thm = predictors.scaled_main_term(x, param, k)
        except ValueError:
            pass
    return thm, ms


def _build_report(mode, x, param, ks, actual, wall) -> MomentReport:
    rows = []
    for k in ks:
        thm, ms = _predictions(mode, x, param, k)
        a = actual.get(k) if actual else None
        ratio = a / thm if (a is not None and thm) else None
        rows.append(MomentRow(k=k, actual=a, predicted_thm=thm,
                              predicted_ms=ms, ratio=ratio))
    return MomentReport(mode=mode, x=x, h_or_delta=param, rows=tuple(rows),
                        wall_seconds=wall, version=__version__)


def _run_fixed(args) -> MomentReport:
    t0 = time.monotonic()
    if args.mode == "sum":
        x, h = int(args.x), int(args.h)
        actual = fixed_mod.moment_sum(
            x, h, args.k, threads=args.threads, segment_size=args.segment_size,
            checkpoint=args.checkpoint, resume=args.resume)
        mode = "fixed-sum"
    else:
        x, h = args.x, args.h
        actual = fixed_mod.moment_integral_fixed(
            x, h, args.k, threads=args.threads, segment_size=args.segment_size,
            checkpoint=args.checkpoint, resume=args.resume)
        mode = "fixed-integral"
    return _build_report(mode, x, h, args.k, actual, time.monotonic() - t0)


def _run_scaled(args) -> MomentReport:
    t0 = time.monotonic()
    actual = scaled_mod.moment_integral_scaled(
        args.x, args.delta, args.k, threads=args.threads,
        segment_size=args.segment_size, checkpoint=args.checkpoint,
        resume=args.resume)
    return _build_report("scaled-integral", args.x, args.delta, args.k,
                         actual, time.monotonic() - t0)


def _run_predict(args) -> MomentReport:
    if args.formula == "cramer":
        if args.h is None:
            raise ValueError("--formula cramer requires --h")
        short, cramer = predictors.cramer_variance(args.x, args.h)
        print(f"window variance  h*log(N/h) = {short:.6g}")
        print(f"Cramer variance  h*log(N)   = {cramer:.6g}")
        print(f"ratio = {short / cramer:.6f}")
        return None
    if args.formula in ("ms", "thm-i"):
        if args.h is None:
            raise ValueError(f"--formula {args.formula} requires --h")
        param, mode = args.h, "fixed-integral"
    else:
        if args.delta is None:
            raise ValueError("--formula thm-ii requires --delta")
        param, mode = args.delta, "scaled-integral"
    rows = []
    for k in args.k:
        if args.formula == "ms":
            value = predictors.fixed_main_term_from_one(args.x, param, k)
            rows.append(MomentRow(k, None, None, value, None))
        elif args.formula == "thm-i":
            value = predictors.fixed_main_term(args.x, param, k)
            rows.append(MomentRow(k, None, value, None, None))
        else:
            value = predictors.scaled_main_term(args.x, param, k)
            rows.append(MomentRow(k, None, value, None, None))
        print(f"k={k}  {value:.6g}")
    return MomentReport(mode=f"predict-{args.formula}", x=args.x,
                        h_or_delta=param, rows=tuple(rows), wall_seconds=0.0,
                        version=__version__)


REPRODUCE_TABLES = {
    "ms-table": ("fixed-sum", 10**10, 10**5),
    "scaled-1e8": ("scaled-integral", 10**8, 1e-4),
    "scaled-1e10": ("scaled-integral", 10**10, 1e-5),
}


def _projected_seconds(mode, x, param, ks, segment_size, threads) -> tuple[float, int]:
    """Time one segment and extrapolate to the whole run."""
    sieve = MangoldtSieve(segment_size)
    if mode == "fixed-sum":
        plan = fixed_mod.partition_plan(int(x), int(param), segment_size)
        task = (plan[0][0].lo, plan[0][0].hi, int(param), ks, sieve)
        worker = fixed_mod._sum_segment
        n = len(plan)
    else:
        plan = scaled_mod.scaled_partition_plan(x, param, segment_size)
        (a, b), _ = plan[0]
        task = (a, b, param, ks, sieve)
        worker = scaled_mod._scaled_segment
        n = len(plan)
    t0 = time.monotonic()
    worker(task)
    per_segment = time.monotonic() - t0
    return per_segment * n / max(1, threads), n


def _run_reproduce(args) -> MomentReport:
    mode, x, param = REPRODUCE_TABLES[args.table]
    ks = (2, 4, 6)
    projected, n_seg = _projected_seconds(
        mode, x, param, ks, args.segment_size, args.threads)
    log.info("projected wall time: %.0f s over %d segments", projected, n_seg)
    if projected > LONG_RUN_SECONDS and not args.confirm_long:
        raise ValueError(
            f"projected run time {projected / 60:.0f} min exceeds 30 min; "
            "re-run with --confirm-long to proceed"
        )
    t0 = time.monotonic()
    if mode == "fixed-sum":
        actual = fixed_mod.moment_sum(
            int(x), int(param), ks, threads=args.threads,
            segment_size=args.segment_size, checkpoint=args.checkpoint,
            resume=args.resume)
    else:
        actual = scaled_mod.moment_integral_scaled(
            x, param, ks, threads=args.threads,
            segment_size=args.segment_size, checkpoint=args.checkpoint,
            resume=args.resume)
    report = _build_report(mode, x, param, ks, actual, time.monotonic() - t0)
    sys.stdout.write(render_table(report))
    return report


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sieve":
            if args.limit < 2:
                raise ValueError("--limit must be >= 2")
            count = prime_count(args.limit)
            if args.count:
                sieve = MangoldtSieve()
                print(f"primes<={args.limit}: {count}")
                print(f"psi({args.limit}) = {sieve.psi(args.limit):.17g}")
            else:
                print(count)
            return 0
        if args.command == "fixed":
            report = _run_fixed(args)
        elif args.command == "scaled":
            report = _run_scaled(args)
        elif args.command == "predict":
            report = _run_predict(args)
            if report is None or args.format is None:
                return 0
        else:
            report = _run_reproduce(args)
            if args.out is None:
                return 0
        emit(report, args.format or "csv", args.out)
        return 0
    except (ValueError, CheckpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericRangeError as exc:
        print(f"numeric-range error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
