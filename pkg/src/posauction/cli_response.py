from __future__ import annotations

import argparse
import logging

from .app.services.bidfiles import read_bid_file
from .cli_common import add_format_arg, emit_json, pick, ratio_from_args
from .constructions.response import best_response
from .core.errors import UsageError
from .core.rational import format_rational
from .model.bids import expected_win_enumerated, zero_sum_check

logger = logging.getLogger("posauction.cli")


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[name-defined]
    parser = subparsers.add_parser("best-response", help="Constructive adversary best response to a defender bid file.")
    parser.add_argument("--d", required=True, help="Defender bid file ('-' for stdin).")
    parser.add_argument("--r", required=True, help="Budget ratio R; the adversary budget is R times the defender total.")
    parser.add_argument("--max-n", type=int, default=None, help="Oracle cap for edge ratios (default from config).")
    add_format_arg(parser)
    parser.set_defaults(func=_run_best_response)

    parser = subparsers.add_parser("eval", help="Exact expected adversary winnings for two bid files.")
    parser.add_argument("--a", required=True, help="Adversary bid file ('-' for stdin).")
    parser.add_argument("--d", required=True, help="Defender bid file ('-' for stdin).")
    parser.add_argument(
        "--enumerate",
        action="store_true",
        help="Average over every defender permutation with the adversary bids kept in file order.",
    )
    add_format_arg(parser)
    parser.set_defaults(func=_run_eval)


def _run_best_response(args: argparse.Namespace) -> int:
    defender = read_bid_file(args.d)
    R = ratio_from_args(args)
    cap = int(pick(args.max_n, args, "oracle", "max_n", 10))
    report = best_response(defender, R, oracle_cap=cap)
    if args.format == "json":
        emit_json(report.as_dict())
        return 0
    print(
        f"case={report.case_tag} ell={report.ell_used} guarantee={format_rational(report.guarantee)} "
        f"achieved={format_rational(report.achieved)} fidelity={report.fidelity.value}"
    )
    print("bids: " + " ".join(report.adversary_bids.as_text()), flush=True)
    return 0


def _run_eval(args: argparse.Namespace) -> int:
    if args.a == "-" and args.d == "-":
        raise UsageError("only one of --a and --d can read stdin")
    adversary = read_bid_file(args.a)
    defender = read_bid_file(args.d)
    if args.enumerate:
        value = expected_win_enumerated(adversary.bids, defender)
        w_a, w_d = value, defender.n - value
    else:
        w_a, w_d = zero_sum_check(adversary, defender)
    if args.format == "json":
        emit_json({"adversary": w_a, "defender": w_d, "n": defender.n})
        return 0
    print(format_rational(w_a), flush=True)
    return 0
