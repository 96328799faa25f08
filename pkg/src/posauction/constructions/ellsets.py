"""Index multisets over the top-l defender bids and their constructors.

An l-set is a multiset over {0, ..., l}; index i stands for the defender bid
beta_{n-l+i}. Every constructor checks its own (l, q) postcondition and raises
:class:`InvariantViolation` with a case tag when a branch does not deliver.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from ..core.errors import DomainError, InvariantViolation
from ..core.rational import RationalLike, as_rational, format_rational
from ..model.bids import BidProfile, choose_delta, make_profile
from ..model.equilibrium import SpectrumDecomposition, r_ell

logger = logging.getLogger("posauction.constructions")


@dataclass(frozen=True)
class EllSet:
    ell: int
    indices: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise DomainError(f"ell must be >= 1, got {self.ell}")
        ordered = tuple(sorted(self.indices))
        for index in ordered:
            if not 0 <= index <= self.ell:
                raise DomainError(f"index {index} outside 0..{self.ell}")
        object.__setattr__(self, "indices", ordered)

    @classmethod
    def full(cls, ell: int, copies: int = 1) -> "EllSet":
        """L^copies: every index 1..l, ``copies`` times."""
        return cls(ell, tuple(range(1, ell + 1)) * copies)

    @property
    def size(self) -> int:
        return len(self.indices)

    def add(self, *items: int) -> "EllSet":
        return EllSet(self.ell, self.indices + tuple(items))

    def union(self, *others: "EllSet") -> "EllSet":
        merged = list(self.indices)
        for other in others:
            if other.ell != self.ell:
                raise DomainError(f"cannot merge an {other.ell}-set into an {self.ell}-set")
            merged.extend(other.indices)
        return EllSet(self.ell, tuple(merged))

    def without(self, *items: int) -> "EllSet":
        remaining = list(self.indices)
        for item in items:
            try:
                remaining.remove(item)
            except ValueError:
                raise InvariantViolation(
                    "multiset",
                    f"index {item} is not in the {self.ell}-set",
                    {"ell": self.ell, "indices": self.indices, "remove": items},
                ) from None
        return EllSet(self.ell, tuple(remaining))


def index_sum(ellset: EllSet) -> Fraction:
    return Fraction(sum(ellset.indices))


def _check_fits(ellset: EllSet, profile: BidProfile) -> None:
    if ellset.ell > profile.n:
        raise DomainError(f"an {ellset.ell}-set needs at least {ellset.ell} bids, profile has {profile.n}")


def bid_sum(ellset: EllSet, profile: BidProfile) -> Fraction:
    _check_fits(ellset, profile)
    offset = profile.n - ellset.ell
    return sum((profile.beta(offset + i) for i in ellset.indices), Fraction(0))


def satisfies_property_p(ellset: EllSet, profile: BidProfile, R: RationalLike) -> Tuple[bool, Optional[str]]:
    """P1 size <= n, P2 index sum >= R_l l(l+1)/2, P3 strict adversary budget."""
    _check_fits(ellset, profile)
    R = as_rational(R)
    n, ell = profile.n, ellset.ell
    if ellset.size > n:
        return False, "P1"
    if index_sum(ellset) < r_ell(R, ell) * ell * (ell + 1) / 2:
        return False, "P2"
    spent = bid_sum(ellset, profile) + (n - ellset.size) * profile.beta(n - ell)
    if not spent < profile.total * R:
        return False, "P3"
    return True, None


def is_lq_set(ellset: EllSet, profile: BidProfile, q: RationalLike) -> bool:
    q = as_rational(q)
    ell = ellset.ell
    return (
        index_sum(ellset) >= q * ell * (ell + 1) / 2
        and bid_sum(ellset, profile) <= q * profile.top_sum(ell)
    )


class EllSetScratch:
    """Working quantities over L = {1..l}: x_i = beta_{n-l+i}, y(i) = 2 i t_l / (l(l+1)).

    Selectors break ties by smallest index.
    """

    def __init__(self, profile: BidProfile, ell: int) -> None:
        if not 1 <= ell <= profile.n:
            raise DomainError(f"ell must be in 1..{profile.n}, got {ell}")
        self.profile = profile
        self.ell = ell
        offset = profile.n - ell
        self.x: Tuple[Fraction, ...] = tuple(profile.beta(offset + i) for i in range(ell + 1))
        self.t = profile.top_sum(ell)
        self.unit = 2 * self.t / (ell * (ell + 1))
        span = range(1, ell + 1)
        self.i0 = max(span, key=lambda i: self.x[i] - self.y(i))
        self.i1 = min(span, key=self.mirror_pair)
        self.i2 = max(span, key=self.mirror_pair)
        self.i3: Optional[int] = None
        if ell > 1:
            self.i3 = max(range(1, ell), key=lambda i: self.x[i] + self.x[ell - i])

    def y(self, i: int) -> Fraction:
        return i * self.unit

    def mirror_pair(self, i: int) -> Fraction:
        return self.x[i] + self.x[self.ell - i + 1]

    def failures(self) -> Tuple[str, ...]:
        found = []
        x, i0 = self.x, self.i0
        if x[i0] < self.y(i0):
            found.append("x_i0 >= y(i0)")
        if any(x[i] - x[i0] > self.y(i - i0) for i in range(1, self.ell + 1)):
            found.append("x_i - x_i0 <= y(i - i0)")
        if self.mirror_pair(self.i1) > 2 * self.t / self.ell:
            found.append("x_i1 + x_(l-i1+1) <= 2 t_l / l")
        return tuple(found)


def _verify(
    tag: str,
    ellset: EllSet,
    profile: BidProfile,
    q: Fraction,
    min_size: int,
    max_size: int,
) -> EllSet:
    if not min_size <= ellset.size <= max_size or not is_lq_set(ellset, profile, q):
        raise InvariantViolation(
            tag,
            f"not an ({ellset.ell}, {format_rational(q)})-set of size {min_size}..{max_size}",
            {
                "ell": ellset.ell,
                "indices": ellset.indices,
                "profile": profile.as_text(),
                "index_sum": index_sum(ellset),
                "bid_sum": bid_sum(ellset, profile),
            },
        )
    logger.debug("%s -> %s", tag, ellset.indices)
    return ellset


def _require_index(tag: str, index: int, ell: int) -> int:
    if not 1 <= index <= ell:
        raise InvariantViolation(tag, f"index {index} is not in 1..{ell}", {"ell": ell, "index": index})
    return index


def build_i1(ell: int, d: int, profile: BidProfile) -> EllSet:
    """{i1, l-i1+1}^d: an (l, 2d/l)-set of size 2d."""
    if d < 0:
        raise DomainError(f"d must be >= 0, got {d}")
    scratch = EllSetScratch(profile, ell)
    i1 = scratch.i1
    result = EllSet(ell, (i1, ell - i1 + 1) * d)
    return _verify("i1", result, profile, Fraction(2 * d, ell), 2 * d, 2 * d)


def build_i2(ell: int, h: int, profile: BidProfile) -> EllSet:
    """An (l, 1 - 2h/(l(l+1)))-set of size l-1 or l, for 0 <= h <= (l+1)/2."""
    if not 0 <= 2 * h <= ell + 1:
        raise DomainError(f"h must be in 0..(l+1)/2, got h={h}, l={ell}")
    s = EllSetScratch(profile, ell)
    x, y, i0 = s.x, s.y, s.i0
    full = EllSet.full(ell)

    if h == 0:
        tag, result = "i2-zero", full
    elif 2 * h == ell + 1:
        tag, result = "i2-half", build_i1(ell, (ell - 1) // 2, profile)
    elif i0 == h:
        tag, result = "i2-drop", full.without(h)
    elif i0 > h:
        tag, result = "i2-shift", full.add(i0 - h).without(i0)
    elif x[ell - h] >= y(ell - h):
        tag = "i2-low-swap"
        result = full.add(_require_index(tag, i0 - 2 * h + ell, ell)).without(i0, ell - h)
    elif x[ell + 1 - h] >= y(ell + 1 - h):
        tag = "i2-high-swap"
        result = full.add(_require_index(tag, i0 - 2 * h + ell + 1, ell)).without(i0, ell + 1 - h)
    elif ell % 2 == 0:
        tag = "i2-even"
        result = full.add(ell + 1 - h).without(s.i2, ell + 1 - s.i2)
    else:
        tag = "i2-odd"
        i3 = s.i3
        if i3 is not None and x[i3] + x[ell - i3] >= x[ell]:
            dropped: Sequence[int] = (i3, ell - i3)
        else:
            dropped = (ell,)
        result = full.add(ell - h).without(*dropped)

    q = 1 - Fraction(2 * h, ell * (ell + 1))
    return _verify(tag, result, profile, q, ell - 1, ell)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def build_i3(ell: int, k: int, h: int, profile: BidProfile) -> EllSet:
    """An (l, k + 2h/(l(l+1)))-set with k*l + floor(2h/(l+1)) <= size <= k*l + ceil(2h/(l+1))."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not 0 <= h <= ell:
        raise DomainError(f"h must be in 0..{ell}, got {h}")
    s = EllSetScratch(profile, ell)
    x, y, i0 = s.x, s.y, s.i0
    base = EllSet.full(ell, k)

    if h == 0:
        tag, result = "i3-zero", base
    elif 2 * h >= ell + 1:
        tag = "i3-upper"
        result = EllSet.full(ell, k - 1).union(build_i1(ell, 1, profile), build_i2(ell, ell + 1 - h, profile))
    elif x[h] <= y(h):
        tag, result = "i3-single", base.add(h)
    elif 1 <= i0 + 2 * h - ell - 1 <= ell and i0 != h:
        tag = "i3-swap"
        result = base.union(build_i1(ell, 1, profile)).add(i0 + 2 * h - ell - 1).without(i0, h)
    else:
        tag = "i3-shift"
        result = base.add(_require_index(tag, i0 + h, ell)).without(i0)

    q = k + Fraction(2 * h, ell * (ell + 1))
    low = k * ell + (2 * h) // (ell + 1)
    high = k * ell + _ceil_div(2 * h, ell + 1)
    return _verify(tag, result, profile, q, low, high)


def build_i4(ell: int, d: int, h: int, profile: BidProfile) -> EllSet:
    """An (l, 2d/l + 2h/(l(l+1)))-set of size at most 2d+2.

    The pair searches are exhaustive only when x_0 = beta_{n-l} is zero, which
    holds at l = n.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if not 0 <= h <= ell:
        raise DomainError(f"h must be in 0..{ell}, got {h}")
    s = EllSetScratch(profile, ell)
    x, y = s.x, s.y
    result: Optional[EllSet] = None
    tag = "i4-search"
    for i in range(h + 1):
        if x[i] + x[h - i] <= y(h):
            tag, result = "i4-low", build_i1(ell, d, profile).add(i, h - i)
            break
    if result is None:
        for i in range(1, ell - h + 1):
            if x[h + i] + x[ell + 1 - i] <= y(ell + 1 + h):
                tag, result = "i4-high", build_i1(ell, d - 1, profile).add(h + i, ell + 1 - i)
                break
    if result is None:
        raise InvariantViolation(
            tag,
            "no pair meets either search bound",
            {"ell": ell, "d": d, "h": h, "profile": profile.as_text()},
        )
    q = Fraction(2 * d, ell) + Fraction(2 * h, ell * (ell + 1))
    return _verify(tag, result, profile, q, 0, 2 * d + 2)


def build_i5(ell: int, d: int, profile: BidProfile) -> EllSet:
    """I1 over l+1 shifted down by one: size 2d, index sum >= l d, bid sum <= 2d t_{l+1}/(l+1)."""
    if ell >= profile.n:
        raise DomainError(f"I5 needs l <= n-1, got l={ell}, n={profile.n}")
    wider = build_i1(ell + 1, d, profile)
    result = EllSet(ell, tuple(j - 1 for j in wider.indices))
    bound = 2 * d * profile.top_sum(ell + 1) / (ell + 1)
    if result.size != 2 * d or index_sum(result) < ell * d or bid_sum(result, profile) > bound:
        raise InvariantViolation(
            "i5",
            "shifted pair set misses its bounds",
            {"ell": ell, "d": d, "indices": result.indices, "profile": profile.as_text()},
        )
    return result


def build_j_sets(ell: int, profile: BidProfile, spectrum: SpectrumDecomposition) -> Tuple[EllSet, EllSet]:
    """The two candidate sets used when n sits at the lower rounding point of the next level."""
    h_prime, d_prime, k = spectrum.h_prime, spectrum.d_prime, spectrum.k
    if not 0 <= h_prime <= ell:
        raise InvariantViolation("j-sets", f"h' = {h_prime} is not in 0..{ell}", {"ell": ell})
    base = build_i3(ell, k, 0, profile)
    first = base.union(build_i5(ell, d_prime, profile)).add(h_prime)
    second = base.union(build_i5(ell, d_prime + 1, profile))
    expected = k * ell + 2 * d_prime + 1
    extra = 0
    if h_prime in second.indices:
        second = second.without(h_prime)
    elif h_prime == 0:
        # index 0 is the filler bid beta_{n-l}; leaving it out changes no bid
        extra = 1
    else:
        raise InvariantViolation(
            "j-sets", f"index {h_prime} is not in the second candidate", {"ell": ell, "second": second.indices}
        )
    if first.size != expected or second.size != expected + extra:
        raise InvariantViolation(
            "j-sets",
            f"sizes {first.size}, {second.size} differ from {expected}",
            {"ell": ell, "first": first.indices, "second": second.indices},
        )
    return first, second


def lift_above(bases: Sequence[Fraction], defender: BidProfile, budget: Fraction) -> BidProfile:
    """Raise every base value by one common delta, staying strictly inside ``budget``."""
    spare = budget - sum(bases, Fraction(0))
    if spare <= 0:
        raise InvariantViolation("lift", "base values already exhaust the budget", {"spare": spare})
    delta = choose_delta(spare / (defender.n + 1), defender, bases)
    lifted = make_profile([base + delta for base in bases])
    if lifted.total > budget or lifted.values & defender.values:
        raise InvariantViolation("lift", "lifted bids break budget or disjointness", {"delta": delta})
    return lifted


def to_adversary_bids(ellset: EllSet, profile: BidProfile, R: RationalLike) -> BidProfile:
    R = as_rational(R)
    ok, failing = satisfies_property_p(ellset, profile, R)
    if not ok:
        raise DomainError(f"the {ellset.ell}-set {ellset.indices} fails Property P ({failing})")
    n, ell = profile.n, ellset.ell
    offset = n - ell
    bases = [profile.beta(offset)] * (n - ellset.size) + [profile.beta(offset + i) for i in ellset.indices]
    return lift_above(bases, profile, profile.total * R)
