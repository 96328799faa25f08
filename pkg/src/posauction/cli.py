"""``posauction`` command-line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import cli_oracle, cli_response, cli_solve, cli_verify
from .app.services.bidfiles import to_json
from .core.config import configure_logging, load_config
from .core.errors import InvariantViolation, PosAuctionError

logger = logging.getLogger("posauction.cli")

COMMAND_MODULES = (cli_solve, cli_response, cli_oracle, cli_verify)


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="posauction",
        description="Exact equilibria and best responses for the two-bidder position-randomized auction.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for module in COMMAND_MODULES:
        module.register(subparsers)
    for sub in subparsers.choices.values():
        sub.add_argument("--config", default=None, help="Config YAML path (default: config root config.yaml).")
        sub.add_argument("--verbose", action="store_true", help="Debug logging to stderr.")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = load_config(path=Path(args.config) if args.config else None)
    except PosAuctionError as exc:
        print(f"Error: {exc}", file=sys.stderr, flush=True)
        return exc.exit_code
    configure_logging("DEBUG" if args.verbose else config.get("logging", {}).get("level", "WARNING"))
    args.config_data = config
    logger.debug("Running %s", args.command)

    try:
        return int(args.func(args))
    except InvariantViolation as exc:
        print(f"Error: {exc}", file=sys.stderr)
        if exc.detail:
            print("counterexample: " + to_json(exc.detail), file=sys.stderr)
        sys.stderr.flush()
        return exc.exit_code
    except PosAuctionError as exc:
        print(f"Error: {exc}", file=sys.stderr, flush=True)
        return exc.exit_code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
