from __future__ import annotations

import argparse
import logging
from pathlib import Path

from .app.services.bidfiles import to_json
from .app.services.verify import run_suites, summarize
from .cli_common import add_format_arg, add_instance_args, config_value, emit_json, pick, ratio_from_args, require_positive
from .core.config import ledger_path

logger = logging.getLogger("posauction.cli")


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[name-defined]
    parser = subparsers.add_parser("verify", help="Run the invariant suites for one (n, R).")
    add_instance_args(parser, beta=False)
    parser.add_argument("--samples", type=int, default=None, help="Random profiles per suite (default from config).")
    parser.add_argument("--seed", type=int, default=None, help="Seed for random profiles (default from config).")
    parser.add_argument("--ledger", default=None, help="Discrepancy ledger JSONL path (default from config).")
    parser.add_argument("--no-ledger", action="store_true", help="Do not append ledger records.")
    add_format_arg(parser)
    parser.set_defaults(func=_run_verify)


def _run_verify(args: argparse.Namespace) -> int:
    R = ratio_from_args(args)
    samples = require_positive("--samples", int(pick(args.samples, args, "verify", "samples", 50)))
    seed = int(pick(args.seed, args, "verify", "seed", 0))
    cap = int(config_value(args, "oracle", "max_n", 10))
    ledger = None
    if not args.no_ledger:
        ledger = Path(args.ledger) if args.ledger else ledger_path(getattr(args, "config_data", None) or {})
        logger.debug("Ledger records go to %s", ledger)
    results = run_suites(args.n, R, samples=samples, seed=seed, oracle_cap=cap, ledger=ledger)
    passed, failed = summarize(results)
    if args.format == "json":
        emit_json({"passed": passed, "failed": failed, "results": [result.as_dict() for result in results]})
    else:
        for result in results:
            print(result.line())
            if not result.passed and result.counterexample:
                print("  counterexample: " + to_json(result.counterexample))
        print(f"{passed} passed, {failed} failed", flush=True)
    return 0 if failed == 0 else 3
