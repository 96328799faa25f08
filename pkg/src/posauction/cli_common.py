"""Flag and output helpers shared by the ``cli_*`` command modules."""

from __future__ import annotations

import argparse
from fractions import Fraction
from typing import Any, Dict, Optional

from .app.services.bidfiles import to_json
from .core.errors import UsageError
from .core.rational import parse_rational
from .model.equilibrium import AuctionInstance


def add_instance_args(parser: argparse.ArgumentParser, beta: bool = True) -> None:
    parser.add_argument("--n", type=int, required=True, help="Number of objects.")
    parser.add_argument("--r", required=True, help="Budget ratio R as exact rational text, e.g. 3/20.")
    if beta:
        parser.add_argument("--beta", default="1", help="Defender budget (default: 1).")


def add_format_arg(parser: argparse.ArgumentParser, choices: tuple = ("text", "json"), default: str = "text") -> None:
    parser.add_argument("--format", choices=choices, default=default, help=f"Output format (default: {default}).")


def instance_from_args(args: argparse.Namespace) -> AuctionInstance:
    beta = getattr(args, "beta", "1")
    return AuctionInstance(args.n, parse_rational(args.r), parse_rational(beta))


def ratio_from_args(args: argparse.Namespace) -> Fraction:
    return parse_rational(args.r)


def config_value(args: argparse.Namespace, section: str, key: str, fallback: Any = None) -> Any:
    config: Dict[str, Any] = getattr(args, "config_data", None) or {}
    value = config.get(section, {}).get(key)
    return fallback if value is None else value


def pick(flag: Optional[Any], args: argparse.Namespace, section: str, key: str, fallback: Any) -> Any:
    """Explicit flag, else config value, else ``fallback``."""
    if flag is not None:
        return flag
    return config_value(args, section, key, fallback)


def require_positive(name: str, value: int) -> int:
    if value < 1:
        raise UsageError(f"{name} must be >= 1, got {value}")
    return value


def emit_json(payload: Any) -> None:
    print(to_json(payload), flush=True)
