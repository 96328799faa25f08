"""Exact adversary best response over threshold-level bid sets.

Every adversary bid is dominated by a level: either a tie at a distinct
defender value (or 0), or a bid infinitesimally above one. The search picks a
multiset of n levels maximizing total win weight under the budget, where any
just-above level makes the budget comparison strict.
"""

from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.errors import CapacityError, InvariantViolation, ValidationError
from ..core.rational import RationalLike, as_rational, format_rational
from ..model.bids import BidProfile, choose_delta, expected_win_exact, make_profile

logger = logging.getLogger("posauction.oracle")

DEFAULT_MAX_N = 10


class LevelMode(str, Enum):
    TIE_AT = "tieAt"
    JUST_ABOVE = "justAbove"


@dataclass(frozen=True)
class ThresholdLevel:
    base: Fraction
    mode: LevelMode
    win_weight: Fraction

    def describe(self) -> str:
        return f"{self.mode.value}({format_rational(self.base)})"


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    witness: BidProfile
    levels: Tuple[ThresholdLevel, ...]
    nodes_explored: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            "value": format_rational(self.value),
            "levels": [level.describe() for level in self.levels],
            "witness": list(self.witness.as_text()),
            "nodes": self.nodes_explored,
        }


def threshold_levels(defender: BidProfile) -> List[ThresholdLevel]:
    """tieAt/justAbove for 0 and every distinct defender value, in increasing cost."""
    n = defender.n
    levels: List[ThresholdLevel] = []
    for value in sorted(defender.values | {Fraction(0)}):
        below = defender.count_below(value)
        at_most = defender.count_at_most(value)
        levels.append(ThresholdLevel(value, LevelMode.TIE_AT, Fraction(below + at_most, 2 * n)))
        levels.append(ThresholdLevel(value, LevelMode.JUST_ABOVE, Fraction(at_most, n)))
    return levels


def dominating_levels(adversary: BidProfile, defender: BidProfile) -> List[ThresholdLevel]:
    """Map each adversary bid to the level with the same win weight and no larger cost."""
    distinct = sorted(defender.values)
    n = defender.n
    mapped: List[ThresholdLevel] = []
    for bid in adversary.ascending:
        below = defender.count_below(bid)
        at_most = defender.count_at_most(bid)
        if at_most > below:
            mapped.append(ThresholdLevel(bid, LevelMode.TIE_AT, Fraction(below + at_most, 2 * n)))
            continue
        pos = bisect.bisect_left(distinct, bid)
        if pos == 0:
            mapped.append(ThresholdLevel(Fraction(0), LevelMode.TIE_AT, Fraction(0)))
        else:
            mapped.append(ThresholdLevel(distinct[pos - 1], LevelMode.JUST_ABOVE, Fraction(at_most, n)))
    return mapped


# (base sum, uses a just-above level, level indices); tuple order is preference order
_Entry = Tuple[Fraction, bool, Tuple[int, ...]]


def _affordable(cost: Fraction, strict: bool, budget: Fraction) -> bool:
    return cost < budget or (cost == budget and not strict)


def _search(levels: Sequence[ThresholdLevel], n: int, budget: Fraction) -> Tuple[Fraction, _Entry, int]:
    # frontier[s][weight] = cheapest entry using s levels
    frontier: List[Dict[Fraction, _Entry]] = [dict() for _ in range(n + 1)]
    frontier[0][Fraction(0)] = (Fraction(0), False, ())
    nodes = 0
    for index, level in enumerate(levels):
        just_above = level.mode is LevelMode.JUST_ABOVE
        for slots in range(1, n + 1):
            target = frontier[slots]
            for weight, (cost, strict, picks) in list(frontier[slots - 1].items()):
                nodes += 1
                new_cost = cost + level.base
                new_strict = strict or just_above
                if not _affordable(new_cost, new_strict, budget):
                    continue
                candidate = (new_cost, new_strict, picks + (index,))
                new_weight = weight + level.win_weight
                current = target.get(new_weight)
                if current is None or candidate < current:
                    target[new_weight] = candidate
    best_weight = max(frontier[n])
    return best_weight, frontier[n][best_weight], nodes


def _instantiate(
    picks: Sequence[ThresholdLevel],
    defender: BidProfile,
    budget: Fraction,
) -> BidProfile:
    lifted = [level.base for level in picks if level.mode is LevelMode.JUST_ABOVE]
    if not lifted:
        return make_profile([level.base for level in picks])
    spent = sum((level.base for level in picks), Fraction(0))
    delta = choose_delta((budget - spent) / (defender.n + 1), defender, lifted)
    return make_profile(
        [level.base + delta if level.mode is LevelMode.JUST_ABOVE else level.base for level in picks]
    )


def threshold_best_response(
    defender: BidProfile,
    R: RationalLike,
    beta: Optional[RationalLike] = None,
    max_n: Optional[int] = None,
) -> OracleResult:
    """Exact optimum of the adversary against ``defender`` with budget ``beta * R``.

    ``beta`` defaults to the defender's total.
    """
    R = as_rational(R)
    cap = DEFAULT_MAX_N if max_n is None else max_n
    n = defender.n
    if n > cap:
        raise CapacityError(f"threshold search is capped at n <= {cap}, got n={n}")
    if R <= 0:
        raise ValidationError(f"R must be positive, got {format_rational(R)}")
    scale = defender.total if beta is None else as_rational(beta)
    if scale <= 0:
        raise ValidationError("defender budget must be positive")
    budget = scale * R

    levels = threshold_levels(defender)
    value, (_, _, picks), nodes = _search(levels, n, budget)
    chosen = tuple(levels[index] for index in picks)
    witness = _instantiate(chosen, defender, budget)
    if expected_win_exact(witness, defender) != value or witness.total > budget:
        raise InvariantViolation(
            "oracle-witness",
            "witness does not realize the searched value within budget",
            {"defender": defender.as_text(), "levels": [level.describe() for level in chosen]},
        )
    logger.debug(
        "threshold search n=%s R=%s: value=%s nodes=%s", n, format_rational(R), format_rational(value), nodes
    )
    return OracleResult(value=value, witness=witness, levels=chosen, nodes_explored=nodes)
