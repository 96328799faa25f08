from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import FrozenSet, Iterable, Sequence, Tuple

from ..core.errors import InvariantViolation, ValidationError
from ..core.rational import RationalLike, as_rational, format_rational

ENUMERATION_MAX_N = 8


@dataclass(frozen=True)
class BidProfile:
    """A multiset of n nonnegative bids.

    ``beta(j)`` is the j-th smallest bid (1-based) with ``beta(0) == 0``;
    ``top_sum(l)`` is the sum of the l largest bids.
    """

    bids: Tuple[Fraction, ...]
    ascending: Tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.ascending)

    @cached_property
    def _suffix_sums(self) -> Tuple[Fraction, ...]:
        # _suffix_sums[l] = sum of the l largest bids
        sums = [Fraction(0)]
        for value in reversed(self.ascending):
            sums.append(sums[-1] + value)
        return tuple(sums)

    @property
    def total(self) -> Fraction:
        return self._suffix_sums[-1]

    def beta(self, j: int) -> Fraction:
        if j == 0:
            return Fraction(0)
        if not 1 <= j <= self.n:
            raise ValidationError(f"bid index {j} outside 0..{self.n}")
        return self.ascending[j - 1]

    def top_sum(self, ell: int) -> Fraction:
        if not 0 <= ell <= self.n:
            raise ValidationError(f"top-sum length {ell} outside 0..{self.n}")
        return self._suffix_sums[ell]

    @cached_property
    def values(self) -> FrozenSet[Fraction]:
        return frozenset(self.ascending)

    def count_below(self, value: Fraction) -> int:
        return bisect.bisect_left(self.ascending, value)

    def count_at_most(self, value: Fraction) -> int:
        return bisect.bisect_right(self.ascending, value)

    def as_text(self) -> Tuple[str, ...]:
        return tuple(format_rational(value) for value in self.ascending)


def make_profile(bids: Iterable[RationalLike], presorted: bool = False) -> BidProfile:
    values = tuple(as_rational(bid) for bid in bids)
    if not values:
        raise ValidationError("a bid profile needs at least one bid")
    for value in values:
        if value < 0:
            raise ValidationError(f"negative bid: {format_rational(value)}")
    ascending = values if presorted else tuple(sorted(values))
    return BidProfile(bids=values, ascending=ascending)


def _same_size(adversary: BidProfile, defender: BidProfile) -> None:
    if adversary.n != defender.n:
        raise ValidationError(f"size mismatch: adversary has {adversary.n} bids, defender has {defender.n}")


def expected_win_exact(adversary: BidProfile, defender: BidProfile) -> Fraction:
    """Expected objects won by the adversary against a uniformly permuted defender.

    Each position holds a uniformly random defender bid, so the expectation is
    the average over adversary bids of count(<a) + count(=a)/2.
    """
    _same_size(adversary, defender)
    halves = 0
    for bid in adversary.ascending:
        halves += defender.count_below(bid) + defender.count_at_most(bid)
    return Fraction(halves, 2 * defender.n)


def zero_sum_check(adversary: BidProfile, defender: BidProfile) -> Tuple[Fraction, Fraction]:
    w_a = expected_win_exact(adversary, defender)
    w_d = expected_win_exact(defender, adversary)
    if w_a + w_d != adversary.n:
        raise InvariantViolation(
            "zero-sum",
            f"winnings do not sum to n: {format_rational(w_a)} + {format_rational(w_d)}",
            {"adversary": adversary.as_text(), "defender": defender.as_text()},
        )
    return w_a, w_d


def expected_win_enumerated(adversary_order: Sequence[RationalLike], defender: BidProfile) -> Fraction:
    """Average over all n! defender orders, adversary bids kept in the given order."""
    order = [as_rational(bid) for bid in adversary_order]
    if len(order) != defender.n:
        raise ValidationError(f"size mismatch: adversary has {len(order)} bids, defender has {defender.n}")
    if defender.n > ENUMERATION_MAX_N:
        raise ValidationError(f"permutation enumeration is limited to n <= {ENUMERATION_MAX_N}")
    halves = 0
    for perm in itertools.permutations(defender.bids):
        for mine, theirs in zip(order, perm):
            if mine > theirs:
                halves += 2
            elif mine == theirs:
                halves += 1
    return Fraction(halves, 2 * math.factorial(defender.n))


def choose_delta(gap: Fraction, defender: BidProfile, bases: Iterable[Fraction]) -> Fraction:
    """g/j for the smallest j >= 1 such that no base + g/j is a defender value."""
    distinct = set(bases)
    forbidden = {value - base for value in defender.values for base in distinct if value > base}
    j = 1
    while gap / j in forbidden:
        j += 1
    return gap / j
