"""Effective winning ratio tables for plotting.

Rows are exact; decimal columns are added only for external plotting tools.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from .core.errors import DomainError
from .core.rational import RationalLike, as_rational, format_decimal, format_rational
from .model.equilibrium import AuctionInstance, Fidelity, effective_ratios, equilibrium, limit_ratios

logger = logging.getLogger("posauction.figures")

CSV_HEADER = ("n", "R", "equilibrium", "E_A", "E_D", "fidelity")
DECIMAL_HEADER = ("equilibrium_dec", "E_A_dec", "E_D_dec")
DEFAULT_CONVERGENCE_POINTS = (100, 1000, 10000, 100000)
PRESET_NAMES = ("low", "high", "curves")


@dataclass(frozen=True)
class RatioRow:
    n: int
    R: Fraction
    equilibrium: Fraction
    e_a: Fraction
    e_d: Fraction
    fidelity: Fidelity

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "R": format_rational(self.R),
            "equilibrium": format_rational(self.equilibrium),
            "E_A": format_rational(self.e_a),
            "E_D": format_rational(self.e_d),
            "fidelity": self.fidelity.value,
        }


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    e_d: Fraction
    limit_gap: Fraction


@dataclass(frozen=True)
class FigurePreset:
    name: str
    n_max: int
    r_values: Tuple[Fraction, ...]


def ratio_row(n: int, R: RationalLike) -> RatioRow:
    inst = AuctionInstance(n, R)
    result = equilibrium(inst)
    e_a, e_d = effective_ratios(inst)
    return RatioRow(n=n, R=inst.ratio, equilibrium=result.value, e_a=e_a, e_d=e_d, fidelity=result.fidelity)


def figure_grid(n_max: int, r_values: Sequence[RationalLike]) -> List[RatioRow]:
    """One row per (n, R), R-major then n-minor."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    ratios = [as_rational(R) for R in r_values]
    for R in ratios:
        if R <= 0:
            raise DomainError(f"R must be positive, got {format_rational(R)}")
    return [ratio_row(n, R) for R in ratios for n in range(1, n_max + 1)]


def convergence_table(R: RationalLike, n_points: Iterable[int]) -> List[ConvergenceRow]:
    R = as_rational(R)
    _, limit_e_d = limit_ratios(R)
    rows = []
    for n in n_points:
        _, e_d = effective_ratios(AuctionInstance(n, R))
        rows.append(ConvergenceRow(n=n, e_d=e_d, limit_gap=abs(e_d - limit_e_d)))
    return rows


def convergence_gaps_shrinking(R: RationalLike, n_points: Sequence[int] = DEFAULT_CONVERGENCE_POINTS) -> bool:
    """True when the gap to the limit does not grow along ``n_points``; logs otherwise."""
    rows = convergence_table(R, n_points)
    for prev, cur in zip(rows, rows[1:]):
        if cur.limit_gap > prev.limit_gap:
            logger.warning(
                "Limit gap grows for R=%s: n=%s gap=%s, n=%s gap=%s",
                format_rational(as_rational(R)),
                prev.n,
                format_decimal(prev.limit_gap, 8),
                cur.n,
                format_decimal(cur.limit_gap, 8),
            )
            return False
    return True


def figure_preset(name: str) -> FigurePreset:
    key = name.strip().lower()
    if key == "low":
        return FigurePreset("low", 100, tuple(Fraction(i, 20) for i in range(1, 21)))
    if key == "high":
        return FigurePreset("high", 100, tuple(Fraction(i) for i in range(1, 21)))
    if key == "curves":
        values = (Fraction(1, 20), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(20), Fraction(50))
        return FigurePreset("curves", 100, values)
    raise DomainError(f"unknown figure preset {name!r}; choose low, high or curves")


def write_ratio_csv(rows: Iterable[RatioRow], stream: TextIO, decimals: Optional[int] = None) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    header = CSV_HEADER + (DECIMAL_HEADER if decimals is not None else ())
    writer.writerow(header)
    count = 0
    for row in rows:
        record = [row.n, format_rational(row.R), format_rational(row.equilibrium)]
        record += [format_rational(row.e_a), format_rational(row.e_d), row.fidelity.value]
        if decimals is not None:
            record += [format_decimal(value, decimals) for value in (row.equilibrium, row.e_a, row.e_d)]
        writer.writerow(record)
        count += 1
    return count
