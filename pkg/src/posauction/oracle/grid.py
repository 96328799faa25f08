"""Desk-scale min-max over defender bids restricted to a rational grid."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..core.errors import CapacityError, ValidationError
from ..core.rational import RationalLike, as_rational, format_rational
from ..model.bids import BidProfile, make_profile
from .threshold import threshold_best_response

logger = logging.getLogger("posauction.oracle")

DEFAULT_GRID_MAX_N = 4
DEFAULT_GRID_MAX_DENOMINATOR = 15

# ascending grid numerators k_1 <= ... <= k_n, bid i is k_i / g
GridPoint = Tuple[int, ...]


@dataclass(frozen=True)
class GridMinmaxResult:
    value: Fraction
    argmin: BidProfile
    candidates: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            "value": format_rational(self.value),
            "argmin": list(self.argmin.as_text()),
            "candidates": self.candidates,
        }


@dataclass(frozen=True)
class ChunkScore:
    value: Optional[Fraction]
    argmin: Optional[GridPoint]
    candidates: int


def grid_points(n: int, grid_denominator: int) -> Iterator[GridPoint]:
    """Every multiset of n numerators from 0..g with sum <= g, in lexicographic order."""
    for point in itertools.combinations_with_replacement(range(grid_denominator + 1), n):
        if sum(point) <= grid_denominator:
            yield point


def grid_profile(point: GridPoint, grid_denominator: int) -> BidProfile:
    return make_profile((Fraction(k, grid_denominator) for k in point), presorted=True)


def score_points(points: Iterable[GridPoint], R: Fraction, grid_denominator: int) -> ChunkScore:
    best_value: Optional[Fraction] = None
    best_point: Optional[GridPoint] = None
    count = 0
    for point in points:
        count += 1
        defender = grid_profile(point, grid_denominator)
        value = threshold_best_response(defender, R, beta=1, max_n=len(point)).value
        if best_value is None or (value, point) < (best_value, best_point):
            best_value, best_point = value, point
    return ChunkScore(value=best_value, argmin=best_point, candidates=count)


def reduce_scores(scores: Iterable[ChunkScore]) -> ChunkScore:
    """Minimum value, then the lexicographically smallest argmin."""
    best_value: Optional[Fraction] = None
    best_point: Optional[GridPoint] = None
    count = 0
    for score in scores:
        count += score.candidates
        if score.value is None or score.argmin is None:
            continue
        if best_value is None or (score.value, score.argmin) < (best_value, best_point):
            best_value, best_point = score.value, score.argmin
    return ChunkScore(value=best_value, argmin=best_point, candidates=count)


def split_points(points: Sequence[GridPoint], parts: int) -> List[List[GridPoint]]:
    size = max(1, -(-len(points) // max(1, parts)))
    return [list(points[i : i + size]) for i in range(0, len(points), size)]


def grid_minmax(
    n: int,
    R: RationalLike,
    grid_denominator: int,
    workers: int = 1,
    max_n: int = DEFAULT_GRID_MAX_N,
    max_denominator: int = DEFAULT_GRID_MAX_DENOMINATOR,
) -> GridMinmaxResult:
    """Minimum over grid defenders (beta = 1) of the exact adversary optimum."""
    R = as_rational(R)
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if grid_denominator < 1:
        raise ValidationError(f"grid denominator must be >= 1, got {grid_denominator}")
    if R <= 0:
        raise ValidationError(f"R must be positive, got {format_rational(R)}")
    if n > max_n:
        raise CapacityError(f"grid search is capped at n <= {max_n}, got n={n}")
    if grid_denominator > max_denominator:
        raise CapacityError(f"grid search is capped at denominator <= {max_denominator}, got {grid_denominator}")

    points = list(grid_points(n, grid_denominator))
    if workers > 1 and len(points) > 1:
        from ..app.services.worker_manager import GridWorkerManager

        with GridWorkerManager(workers) as manager:
            score = manager.map_chunks(split_points(points, 4 * workers), R, grid_denominator)
    else:
        score = score_points(points, R, grid_denominator)

    assert score.value is not None and score.argmin is not None
    logger.debug(
        "grid_minmax(n=%s, R=%s, g=%s): value=%s over %s defenders, workers=%s",
        n,
        format_rational(R),
        grid_denominator,
        format_rational(score.value),
        score.candidates,
        workers,
    )
    return GridMinmaxResult(
        value=score.value,
        argmin=grid_profile(score.argmin, grid_denominator),
        candidates=score.candidates,
    )
