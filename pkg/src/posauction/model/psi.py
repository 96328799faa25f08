from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List

from ..core.errors import InvariantViolation
from ..core.rational import format_rational
from .bids import BidProfile
from .equilibrium import AuctionInstance, Branch, Fidelity, ell_one, ell_two, equilibrium

logger = logging.getLogger("posauction.model")


@dataclass(frozen=True)
class PsiConstruction:
    instance: AuctionInstance
    bids: BidProfile
    zero_count: int
    proportional_count: int
    unbeatable_count: int
    uniform_count: int
    branch: Branch
    fidelity: Fidelity

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self.instance.n,
            "beta": format_rational(self.instance.beta),
            "R": format_rational(self.instance.ratio),
            "branch": self.branch.value,
            "fidelity": self.fidelity.value,
            "bids": list(self.bids.as_text()),
        }


def _equal_split(inst: AuctionInstance, count: int, zeros: int) -> List[Fraction]:
    share = inst.beta / count
    return [Fraction(0)] * zeros + [share] * count


def _proportional(inst: AuctionInstance, ell: int) -> List[Fraction]:
    # 2 i beta / (l(l+1)), i = 1..l, built with one shared denominator
    num, den = 2 * inst.beta.numerator, ell * (ell + 1) * inst.beta.denominator
    return [Fraction(i * num, den) for i in range(1, ell + 1)]


def optimal_bid_set(inst: AuctionInstance) -> PsiConstruction:
    """The defender's bid set for every budget-ratio regime, built in one pass."""
    n = inst.n
    budget = inst.adversary_budget
    result = equilibrium(inst)
    branch = result.branch
    zeros = proportional = unbeatable = uniform = 0

    if branch is Branch.ZEROS_PLUS_UNBEATABLE:
        zeros = ell_one(n, inst.ratio)
        unbeatable = n - zeros
        values = _equal_split(inst, unbeatable, zeros)
        if not values[-1] > budget:
            raise InvariantViolation(
                "psi-unbeatable",
                f"beta/(n-l1) = {format_rational(values[-1])} does not exceed the adversary budget",
                {"n": n, "R": inst.ratio},
            )
    elif branch is Branch.PROPORTIONAL:
        ell = ell_two(n, inst.ratio)
        zeros = n - ell
        proportional = ell
        values = [Fraction(0)] * zeros + _proportional(inst, ell)
    else:
        values = _equal_split(inst, n, 0)
        if values[0] > budget:
            unbeatable = n
        else:
            uniform = n

    ordered = tuple(values)
    profile = BidProfile(bids=ordered, ascending=ordered)
    logger.debug(
        "psi(n=%s, R=%s): zeros=%s proportional=%s unbeatable=%s uniform=%s",
        n,
        format_rational(inst.ratio),
        zeros,
        proportional,
        unbeatable,
        uniform,
    )
    return PsiConstruction(
        instance=inst,
        bids=profile,
        zero_count=zeros,
        proportional_count=proportional,
        unbeatable_count=unbeatable,
        uniform_count=uniform,
        branch=branch,
        fidelity=result.fidelity,
    )


def check_psi(construction: PsiConstruction) -> None:
    """Budget, count and proportionality checks; O(n)."""
    inst = construction.instance
    profile = construction.bids
    counts = (
        construction.zero_count
        + construction.proportional_count
        + construction.unbeatable_count
        + construction.uniform_count
    )
    if counts != inst.n or profile.n != inst.n:
        raise InvariantViolation("psi-counts", "block counts do not add up to n", {"n": inst.n})
    if profile.total > inst.beta:
        raise InvariantViolation("psi-budget", "bid total exceeds beta", {"total": profile.total})
    if construction.zero_count < inst.n and profile.total != inst.beta:
        raise InvariantViolation("psi-budget", "nonzero blocks must spend the whole budget", {"total": profile.total})
    start = construction.zero_count
    if construction.proportional_count:
        unit = profile.ascending[start]
        for i in range(1, construction.proportional_count + 1):
            if profile.ascending[start + i - 1] != i * unit:
                raise InvariantViolation("psi-proportional", f"bid {i} is not {i} times the smallest", {})
    if construction.unbeatable_count:
        if not profile.ascending[-construction.unbeatable_count] > inst.adversary_budget:
            raise InvariantViolation("psi-unbeatable", "unbeatable bid does not exceed the adversary budget", {})
