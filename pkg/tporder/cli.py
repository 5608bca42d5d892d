"""
CLI is a controller for the command line use of this library
"""

from __future__ import annotations

import json
import logging
import os
import random
import re
import sys
import time
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from math import factorial
from typing import Callable, Optional

from . import config
from .distance import DistanceQuery, seed_distance, transpositions_between
from .factoradic import FactoradicCode, Permutation, decode_permutation, encode_permutation
from .stream import DeltaStep, NotAdjacent, SeedRange, drain_chunks, open_stream, stream_chunks
from .types import OutputRecord
from .unranker import (
    minimal_width,
    rank,
    rank_permutation,
    unrank,
    unrank_permutation,
    unrank_with_trace,
)
from .utils import bold, green, red
from .verify import PROPERTIES, DigitFlipFault, SampleSpec, VerificationReport, run_suite

logger = logging.getLogger(__name__)

_SEED_RE = re.compile(r"[0-9]+")
MAX_LISTED_VIOLATIONS = int(config["verify"]["max_listed_violations"])

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def configure_logging(verbose: bool = False) -> None:
    level = logging.INFO if verbose else getattr(logging, os.getenv("LOG_LEVEL", "WARNING").upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="[%(asctime)s] %(levelname)s: %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)


def main(argv: Optional[list[str]] = None) -> int:
    """
    Passes arguments into the program, returns the exit code
    """
    if hasattr(sys, "set_int_max_str_digits"):
        # seeds are decimal strings of any length
        sys.set_int_max_str_digits(0)

    parser = get_args_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except NotAdjacent as e:
        print(f"violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def get_args_parser() -> ArgumentParser:
    """
    Generates the parser with one subcommand per operation
    """
    parser = ArgumentParser(
        prog="tporder",
        description="Unrank permutations in transposition order: consecutive seeds give "
        + "permutations one transposition apart",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unrank", help="Seed -> transposition-order code and permutation")
    p.add_argument("seed", type=parse_seed)
    p.add_argument("--n", type=parse_width, default=None, help="Width (default: minimal)")
    p.add_argument("--json", action="store_true", help="Emit one JSON record")
    p.add_argument("--trace", action="store_true", help="Also print x_k, d_k, f_{k-1} per step")
    p.set_defaults(handler=cmd_unrank)

    p = sub.add_parser("rank", help="Transposition-order code (MSD first) -> seed")
    p.add_argument("digits", nargs="+", type=str)
    p.add_argument("--perm", action="store_true", help="Read the arguments as a permutation instead")
    p.set_defaults(handler=cmd_rank)

    p = sub.add_parser("decode", help="Factoradic digits (MSD first) -> permutation")
    p.add_argument("digits", nargs="+", type=str)
    p.set_defaults(handler=cmd_decode)

    p = sub.add_parser("encode", help="Permutation -> factoradic digits (MSD first)")
    p.add_argument("perm", nargs="+", type=str)
    p.set_defaults(handler=cmd_encode)

    p = sub.add_parser("dist", help="Transposition distance between two seeds")
    p.add_argument("left", type=parse_seed)
    p.add_argument("right", type=parse_seed)
    p.add_argument("--n", type=parse_width, default=None, help="Common width (default: minimal for both)")
    p.add_argument("--swaps", action="store_true", help="Also print a shortest list of position swaps")
    p.set_defaults(handler=cmd_dist)

    p = sub.add_parser("stream", help="Permutations of seeds START..END-1 with their deltas")
    p.add_argument("start", type=parse_seed)
    p.add_argument("end", type=parse_seed)
    p.add_argument("--n", type=parse_width, default=None)
    p.add_argument("--json", action="store_true", help="JSON lines output")
    p.add_argument("--chunks", type=parse_width, default=int(config["stream"]["default_chunks"]))
    p.add_argument("--workers", type=parse_width, default=None)
    p.set_defaults(handler=cmd_stream)

    p = sub.add_parser("verify", help="Check the transposition-order properties")
    p.add_argument("--n", type=parse_width, default=int(config["verify"]["default_width"]))
    which = p.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="Every property (default)")
    which.add_argument("--property", action="append", choices=sorted(PROPERTIES), dest="properties")
    p.add_argument("--sample", type=parse_width, default=None, help="Force sampling with K draws")
    p.add_argument("--rng-seed", type=int, default=None)
    p.add_argument("--inject-fault", type=parse_seed, default=None, metavar="SEED",
                   help="Flip digit f_1 of the code at SEED (the harness must then fail)")
    p.add_argument("--workers", type=parse_width, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="Include elapsed times")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bench", help="Throughput of unrank and of full streams")
    p.add_argument("--n", type=parse_width, default=int(config["bench"]["default_width"]))
    p.add_argument("--count", type=parse_width, default=int(config["bench"]["default_count"]))
    p.add_argument("--rng-seed", type=int, default=int(config["verify"]["default_rng_seed"]))
    p.add_argument("--stream", action="store_true", help="Also stream all n! permutations")
    p.add_argument("--chunks", type=parse_width, default=int(config["stream"]["default_chunks"]))
    p.add_argument("--workers", type=parse_width, default=None)
    p.set_defaults(handler=cmd_bench)

    return parser


# ---------- parsing


def parse_seed(raw: str) -> int:
    text = raw.strip()
    if not _SEED_RE.fullmatch(text):
        raise ArgumentTypeError(f"seed must be a non-negative decimal integer, got {raw!r}")
    return int(text)


def parse_width(raw: str) -> int:
    value = parse_seed(raw)
    if value < 1:
        raise ArgumentTypeError(f"expected a positive integer, got {raw!r}")
    return value


def parse_int_list(tokens: list[str]) -> list[int]:
    """Accepts "2 1 2" as separate arguments or "2,1,2" as one."""
    values = []
    for token in tokens:
        for part in token.split(","):
            part = part.strip()
            if not part:
                continue
            if not _SEED_RE.fullmatch(part):
                raise ValueError(f"not a non-negative integer: {part!r}")
            values.append(int(part))
    if not values:
        raise ValueError("no values given")
    return values


# ---------- saída


def to_record(step: DeltaStep) -> OutputRecord:
    return {
        "s": str(step.seed),
        "n": step.perm.width,
        "digits": list(step.code.msd()),
        "perm": list(step.perm.entries),
        "delta": step.delta.as_list() if step.delta is not None else None,
    }


def _dumps(record) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def _text_line(step: DeltaStep) -> str:
    return f"{step.seed}\t{step.code}\t{step.perm}\t{step.delta if step.delta is not None else '-'}"


# ---------- comandos


def cmd_unrank(args: Namespace) -> int:
    if args.trace:
        code, trace = unrank_with_trace(args.seed, args.n)
    else:
        code, trace = unrank(args.seed, args.n), None
    perm = decode_permutation(code)
    if args.json:
        record = to_record(DeltaStep(seed=args.seed, code=code, perm=perm, delta=None))
        if trace is not None:
            record["trace"] = [{"k": t.k, "x": t.x, "d": t.d, "f": t.f} for t in trace.steps]  # type: ignore[typeddict-unknown-key]
        print(_dumps(record))
        return EXIT_OK
    print(code)
    print(perm)
    if trace is not None:
        print(code.notation())
        for t in trace.steps:
            print(f"k={t.k} x={t.x} d={t.d} f={t.f}")
    return EXIT_OK


def cmd_rank(args: Namespace) -> int:
    values = parse_int_list(args.digits)
    if args.perm:
        print(rank_permutation(Permutation(tuple(values))))
    else:
        print(rank(FactoradicCode.from_msd(values)))
    return EXIT_OK


def cmd_decode(args: Namespace) -> int:
    print(decode_permutation(FactoradicCode.from_msd(parse_int_list(args.digits))))
    return EXIT_OK


def cmd_encode(args: Namespace) -> int:
    print(encode_permutation(Permutation(tuple(parse_int_list(args.perm)))))
    return EXIT_OK


def cmd_dist(args: Namespace) -> int:
    query = DistanceQuery(args.left, args.right, args.n)
    print(seed_distance(query))
    if args.swaps:
        n = query.resolved_width()
        swaps = transpositions_between(unrank_permutation(args.left, n), unrank_permutation(args.right, n))
        print(" ".join(f"({a},{b})" for a, b in swaps) or "-")
    return EXIT_OK


def cmd_stream(args: Namespace) -> int:
    n = args.n if args.n is not None else minimal_width(max(args.end - 1, 0))
    seed_range = SeedRange(args.start, args.end, n)
    if args.chunks > 1:
        steps = stream_chunks(seed_range, args.chunks, args.workers)
    else:
        steps = open_stream(seed_range)
    render: Callable[[DeltaStep], str] = (lambda st: _dumps(to_record(st))) if args.json else _text_line
    out = sys.stdout
    for step in steps:
        out.write(render(step) + "\n")
    out.flush()
    return EXIT_OK


def _report_line(report: VerificationReport, timing: bool, color: bool) -> str:
    status = "PASS" if report.passed else "FAIL"
    if color:
        status = bold(green(status) if report.passed else red(status))
    return f"{status} {report.summary(timing)}"


def cmd_verify(args: Namespace) -> int:
    sample = None
    if args.sample is not None:
        sample = SampleSpec(count=args.sample, rng_seed=SampleSpec.default(args.rng_seed).rng_seed)
    unrank_fn = DigitFlipFault(args.inject_fault) if args.inject_fault is not None else unrank_permutation
    if args.inject_fault is not None:
        logger.warning("Injeção de falha ativa: dígito f_1 invertido na semente %d", args.inject_fault)

    names = None if args.all or not args.properties else args.properties
    reports = run_suite(args.n, names, sample, unrank_fn, args.workers, args.rng_seed)

    color = sys.stdout.isatty()
    for report in reports:
        if args.json:
            print(_dumps(report.to_record(args.timing)))
            continue
        print(_report_line(report, args.timing, color))
        for v in report.violations[:MAX_LISTED_VIOLATIONS]:
            seeds = ",".join(str(s) for s in v.seeds)
            print(f"  seeds=({seeds}) observed={v.observed} expected {v.relation} {v.bound}")
        hidden = len(report.violations) - MAX_LISTED_VIOLATIONS
        if hidden > 0:
            print(f"  ... {hidden} more")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def cmd_bench(args: Namespace) -> int:
    n = args.n
    rng = random.Random(args.rng_seed)
    _, trace = unrank_with_trace(rng.randrange(factorial(n)), n)
    print(f"trace n={n} steps={trace.width}")

    seeds = [rng.randrange(factorial(n)) for _ in range(args.count)]
    t0 = time.perf_counter()
    for s in seeds:
        unrank_permutation(s, n)
    elapsed = time.perf_counter() - t0
    print(f"unrank n={n} count={args.count} seconds={elapsed:.3f} per_second={args.count / max(elapsed, 1e-9):.0f}")

    if args.stream:
        full = SeedRange.full(n)
        t0 = time.perf_counter()
        steps, deltas = drain_chunks(full, args.chunks, args.workers)
        elapsed = time.perf_counter() - t0
        print(f"stream n={n} steps={steps} deltas={deltas} seconds={elapsed:.3f} per_second={steps / max(elapsed, 1e-9):.0f}")
        if steps != full.size or deltas != full.size - 1:
            return EXIT_VIOLATION
    return EXIT_OK if trace.width == n else EXIT_VIOLATION
