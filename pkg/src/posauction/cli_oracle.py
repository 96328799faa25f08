from __future__ import annotations

import argparse
import logging

from .app.services.bidfiles import read_bid_file
from .cli_common import add_format_arg, add_instance_args, emit_json, pick, ratio_from_args, require_positive
from .core.errors import UsageError
from .core.rational import format_rational, parse_rational
from .model.bids import expected_win_exact
from .oracle.grid import DEFAULT_GRID_MAX_DENOMINATOR, grid_minmax
from .oracle.montecarlo import mc_simulate
from .oracle.threshold import threshold_best_response

logger = logging.getLogger("posauction.cli")


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[name-defined]
    parser = subparsers.add_parser("oracle-br", help="Exact adversary optimum by threshold-level search.")
    parser.add_argument("--d", required=True, help="Defender bid file ('-' for stdin).")
    parser.add_argument("--r", required=True, help="Budget ratio R.")
    parser.add_argument("--beta", default=None, help="Budget scale (default: the defender total).")
    parser.add_argument("--max-n", type=int, default=None, help="Search cap on n (default from config).")
    add_format_arg(parser)
    parser.set_defaults(func=_run_oracle_br)

    parser = subparsers.add_parser("oracle-minmax", help="Min over grid defenders of the exact adversary optimum.")
    add_instance_args(parser, beta=False)
    parser.add_argument("--grid-denominator", type=int, required=True, help="Grid step 1/g for defender bids.")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes (default from config).")
    add_format_arg(parser)
    parser.set_defaults(func=_run_oracle_minmax)

    parser = subparsers.add_parser("simulate", help="Monte Carlo estimate of adversary winnings.")
    parser.add_argument("--a", required=True, help="Adversary bid file ('-' for stdin).")
    parser.add_argument("--d", required=True, help="Defender bid file ('-' for stdin).")
    parser.add_argument("--trials", type=int, default=None, help="Number of trials (default from config).")
    parser.add_argument("--seed", type=int, default=None, help="Generator seed (default from config).")
    add_format_arg(parser)
    parser.set_defaults(func=_run_simulate)


def _run_oracle_br(args: argparse.Namespace) -> int:
    defender = read_bid_file(args.d)
    R = ratio_from_args(args)
    beta = parse_rational(args.beta) if args.beta is not None else None
    cap = int(pick(args.max_n, args, "oracle", "max_n", 10))
    result = threshold_best_response(defender, R, beta=beta, max_n=cap)
    if args.format == "json":
        emit_json(result.as_dict())
        return 0
    print(f"value={format_rational(result.value)} nodes={result.nodes_explored}")
    print("levels: " + " ".join(level.describe() for level in result.levels))
    print("witness: " + " ".join(result.witness.as_text()), flush=True)
    return 0


def _run_oracle_minmax(args: argparse.Namespace) -> int:
    R = ratio_from_args(args)
    workers = require_positive("--workers", int(pick(args.workers, args, "oracle", "workers", 1)))
    result = grid_minmax(
        args.n,
        R,
        args.grid_denominator,
        workers=workers,
        max_n=int(pick(None, args, "oracle", "grid_max_n", 4)),
        max_denominator=int(pick(None, args, "oracle", "grid_max_denominator", DEFAULT_GRID_MAX_DENOMINATOR)),
    )
    if args.format == "json":
        emit_json(result.as_dict())
        return 0
    print(f"value={format_rational(result.value)} candidates={result.candidates}")
    print("argmin: " + " ".join(result.argmin.as_text()), flush=True)
    return 0


def _run_simulate(args: argparse.Namespace) -> int:
    if args.a == "-" and args.d == "-":
        raise UsageError("only one of --a and --d can read stdin")
    adversary = read_bid_file(args.a)
    defender = read_bid_file(args.d)
    trials = require_positive("--trials", int(pick(args.trials, args, "simulate", "trials", 100000)))
    seed = int(pick(args.seed, args, "simulate", "seed", 0))
    chunk = int(pick(None, args, "simulate", "chunk", 10000))
    result = mc_simulate(adversary, defender, trials=trials, seed=seed, chunk=chunk)
    exact = expected_win_exact(adversary, defender)
    if args.format == "json":
        emit_json({**result.as_dict(), "exact": exact})
        return 0
    print(
        f"mean={result.mean:.6f} stderr={result.stderr:.6f} trials={result.trials} seed={result.seed} "
        f"exact={format_rational(exact)}",
        flush=True,
    )
    return 0
