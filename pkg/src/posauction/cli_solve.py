from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .app.services.bidfiles import format_bid_lines, write_bid_file
from .cli_common import add_format_arg, add_instance_args, emit_json, instance_from_args, ratio_from_args
from .core.errors import UsageError
from .core.rational import format_decimal, format_rational, parse_rational_list
from .figures import (
    PRESET_NAMES,
    convergence_gaps_shrinking,
    convergence_table,
    figure_grid,
    figure_preset,
    write_ratio_csv,
)
from .model.equilibrium import equilibrium, limit_ratios
from .model.psi import check_psi, optimal_bid_set

logger = logging.getLogger("posauction.cli")


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[name-defined]
    parser = subparsers.add_parser("equilibrium", help="Equilibrium winnings of the adversary.")
    add_instance_args(parser)
    add_format_arg(parser)
    parser.set_defaults(func=_run_equilibrium)

    parser = subparsers.add_parser("psi", help="The defender's optimal bid set.")
    add_instance_args(parser)
    add_format_arg(parser)
    parser.add_argument(
        "--output", "--bids", dest="output", default=None, help="Write the bid file here instead of stdout."
    )
    parser.set_defaults(func=_run_psi)

    parser = subparsers.add_parser("limits", help="Limit effective winning ratios as n grows.")
    parser.add_argument("--r", required=True, help="Budget ratio R.")
    parser.add_argument(
        "--n-points",
        default=None,
        help="Comma-separated n values; adds the gap to the limit at each n.",
    )
    parser.add_argument("--decimals", type=int, default=None, help="Also print decimals with this many digits.")
    add_format_arg(parser)
    parser.set_defaults(func=_run_limits)

    parser = subparsers.add_parser("ratios", help="Effective winning ratio table (CSV).")
    parser.add_argument("--n-max", type=int, default=None, help="Largest n (rows for n = 1..n-max).")
    parser.add_argument("--r-list", default=None, help="Comma-separated ratios, e.g. 1/20,1/2,1.")
    parser.add_argument("--preset", choices=PRESET_NAMES, default=None, help="Use a stored (n-max, R list) preset.")
    parser.add_argument("--decimals", type=int, default=None, help="Add decimal columns with this many digits.")
    parser.add_argument("--output", default=None, help="Write the table here instead of stdout.")
    add_format_arg(parser, choices=("csv", "json"), default="csv")
    parser.set_defaults(func=_run_ratios)


def _run_equilibrium(args: argparse.Namespace) -> int:
    inst = instance_from_args(args)
    result = equilibrium(inst)
    if args.format == "json":
        emit_json(
            {
                "n": inst.n,
                "R": inst.ratio,
                "beta": inst.beta,
                "value": result.value,
                "branch": result.branch,
                "fidelity": result.fidelity,
            }
        )
    else:
        print(result.describe(), flush=True)
    return 0


def _run_psi(args: argparse.Namespace) -> int:
    inst = instance_from_args(args)
    construction = optimal_bid_set(inst)
    check_psi(construction)
    if args.format == "json":
        emit_json(construction.as_dict())
        return 0
    header = (
        f"psi n={inst.n} R={format_rational(inst.ratio)} beta={format_rational(inst.beta)} "
        f"branch={construction.branch.value}"
    )
    if args.output:
        target = write_bid_file(construction.bids, Path(args.output), header=header)
        print(f"Wrote {inst.n} bids to {target}", flush=True)
        return 0
    sys.stdout.write(format_bid_lines(construction.bids, header=header))
    sys.stdout.flush()
    return 0


def _run_limits(args: argparse.Namespace) -> int:
    R = ratio_from_args(args)
    e_a, e_d = limit_ratios(R)
    rows = []
    if args.n_points:
        try:
            points = [int(item) for item in args.n_points.split(",") if item.strip()]
        except ValueError:
            raise UsageError(f"--n-points must be comma-separated integers, got {args.n_points!r}") from None
        rows = convergence_table(R, points)
        convergence_gaps_shrinking(R, points)
    if args.format == "json":
        emit_json(
            {
                "R": R,
                "E_A": e_a,
                "E_D": e_d,
                "convergence": [{"n": row.n, "E_D": row.e_d, "gap": row.limit_gap} for row in rows],
            }
        )
        return 0
    line = f"E_A={format_rational(e_a)} E_D={format_rational(e_d)}"
    if args.decimals is not None:
        line += f" ({format_decimal(e_a, args.decimals)}, {format_decimal(e_d, args.decimals)})"
    print(line)
    for row in rows:
        gap = format_decimal(row.limit_gap, args.decimals if args.decimals is not None else 6)
        print(f"n={row.n} E_D={format_rational(row.e_d)} gap={gap}")
    sys.stdout.flush()
    return 0


def _run_ratios(args: argparse.Namespace) -> int:
    if args.preset:
        if args.r_list or args.n_max:
            raise UsageError("--preset cannot be combined with --n-max or --r-list")
        preset = figure_preset(args.preset)
        n_max, ratios = preset.n_max, list(preset.r_values)
        logger.debug("Using ratios preset %s: n_max=%s, %d ratios", preset.name, n_max, len(ratios))
    else:
        if args.n_max is None or not args.r_list:
            raise UsageError("ratios needs --preset or both --n-max and --r-list")
        n_max, ratios = args.n_max, parse_rational_list(args.r_list)
    rows = figure_grid(n_max, ratios)
    if args.format == "json":
        emit_json([row.as_dict() for row in rows])
        return 0
    if args.output:
        target = Path(args.output)
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8", newline="") as handle:
            count = write_ratio_csv(rows, handle, decimals=args.decimals)
        print(f"Wrote {count} rows to {target}", flush=True)
        return 0
    write_ratio_csv(rows, sys.stdout, decimals=args.decimals)
    sys.stdout.flush()
    return 0
