"""Constructive adversary best responses against an arbitrary defender bid set."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from ..core.errors import InvariantViolation, ValidationError
from ..core.rational import RationalLike, as_rational, format_rational
from ..model.bids import BidProfile, expected_win_exact
from ..model.equilibrium import (
    AuctionInstance,
    Fidelity,
    SpectrumDecomposition,
    ell_one,
    equilibrium,
    f_value,
    spectrum,
)
from ..oracle.threshold import threshold_best_response
from .ellsets import (
    EllSet,
    build_i1,
    build_i2,
    build_i3,
    build_i4,
    build_i5,
    build_j_sets,
    lift_above,
    satisfies_property_p,
    to_adversary_bids,
)

logger = logging.getLogger("posauction.constructions")


@dataclass(frozen=True)
class BestResponseReport:
    adversary_bids: BidProfile
    case_tag: str
    ell_used: int
    guarantee: Fraction
    achieved: Fraction
    fidelity: Fidelity

    def as_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case_tag,
            "ell": self.ell_used,
            "guarantee": format_rational(self.guarantee),
            "achieved": format_rational(self.achieved),
            "fidelity": self.fidelity.value,
            "bids": list(self.adversary_bids.as_text()),
        }


@dataclass(frozen=True)
class CaseSelection:
    """Which case applies for 1 < R <= n, with the spectra it needs."""

    case: str
    ell: int
    spectrum: SpectrumDecomposition
    next_spectrum: Optional[SpectrumDecomposition] = None


def classify_high_case(n: int, R: RationalLike) -> CaseSelection:
    R = as_rational(R)
    if not 1 < R <= n:
        raise ValidationError(f"case selection needs 1 < R <= n, got n={n}, R={format_rational(R)}")
    ell = math.floor(n / R)
    sp = spectrum(R, ell)
    k = sp.k
    if n <= math.floor(ell * sp.r_ell) + k:
        return CaseSelection("case1", ell, sp)
    if n <= k * (ell + 1) + 2 * sp.d_prime + (2 * sp.h_prime) // (ell + 1):
        return CaseSelection("case2", ell, sp)
    if n != k * (ell + 1) + 2 * sp.d_prime + 1:
        raise InvariantViolation("high-case3", f"n={n} is not k(l+1) + 2d' + 1", {"R": R, "ell": ell})
    nxt = spectrum(R, ell + 1)
    scaled = nxt.r_ell * (ell + 1)
    if n == math.ceil(scaled):
        return CaseSelection("case3a", ell, sp, nxt)
    if n == math.floor(scaled):
        return CaseSelection("case3b", ell, sp, nxt)
    raise InvariantViolation(
        "high-case3",
        f"n={n} is neither rounding of R_(l+1)(l+1) = {format_rational(scaled)}",
        {"R": R, "ell": ell},
    )


def _sliver_response(defender: BidProfile, R: Fraction) -> Tuple[str, int, BidProfile]:
    n = defender.n
    budget = defender.total * R
    ell1 = ell_one(n, R)
    below = defender.count_below(budget)
    if below >= ell1:
        bases = [Fraction(0)] * (n - 1) + [defender.beta(below)]
        return "sliver-single", below, lift_above(bases, defender, budget)
    if 2 * below < ell1:
        raise InvariantViolation(
            "sliver-pair",
            f"only {below} bids below the adversary budget, need at least {ell1}/2",
            {"profile": defender.as_text(), "R": R},
        )
    b = defender.beta
    i_star = min(range(2 * below - ell1 + 1), key=lambda i: b(below - i) + b(ell1 - below + i))
    bases = [Fraction(0)] * (n - 2) + [b(below - i_star), b(ell1 - below + i_star)]
    return "sliver-pair", below, lift_above(bases, defender, budget)


def _low_set(defender: BidProfile, R: Fraction) -> Tuple[str, EllSet]:
    n = defender.n
    sp = spectrum(R, n)
    if sp.r_ell == Fraction(2, n + 1):
        b = defender.beta
        i_star = min(range(1, n + 1), key=lambda i: b(i) + b(n - i))
        return "low-pair", EllSet(n, (i_star, n - i_star))
    if 2 * sp.d + 2 <= n:
        return "low-i4", build_i4(n, sp.d, sp.h, defender)
    if n % 2 == 0 or 2 * sp.d != n - 1:
        raise InvariantViolation("low-i2", f"expected d_n = (n-1)/2 for odd n, got d={sp.d}, n={n}", {"R": R})
    h = (n + 1) // 2 - sp.h
    if not 0 < 2 * h <= n + 1:
        raise InvariantViolation("low-i2", f"h = {h} outside (0, (n+1)/2]", {"R": R, "n": n})
    return "low-i2", build_i2(n, h, defender)


def _high_set(defender: BidProfile, R: Fraction) -> Tuple[str, EllSet]:
    n = defender.n
    sel = classify_high_case(n, R)
    ell, sp, k = sel.ell, sel.spectrum, sel.spectrum.k
    if sel.case == "case1":
        return "high-case1", build_i1(ell, sp.d, defender).union(build_i3(ell, k, sp.h, defender))
    if sel.case == "case2":
        return "high-case2", build_i5(ell, sp.d_prime, defender).union(build_i3(ell, k, sp.h_prime, defender))
    nxt = sel.next_spectrum
    assert nxt is not None
    if sel.case == "case3a":
        wider = ell + 1
        return "high-case3a", build_i1(wider, nxt.d, defender).union(build_i3(wider, nxt.k, nxt.h, defender))
    first, second = build_j_sets(ell, defender, sp)
    threshold = 2 * (sp.h_prime + sp.delta_ell) * defender.total / (ell * (ell + 1))
    if defender.beta(n - ell + sp.h_prime) < threshold:
        return "high-case3b-j1", first
    return "high-case3b-j2", second


def best_response(defender: BidProfile, R: RationalLike, oracle_cap: Optional[int] = None) -> BestResponseReport:
    R = as_rational(R)
    n = defender.n
    beta = defender.total
    if beta <= 0:
        raise ValidationError("defender bids must have a positive total")
    if R <= 0:
        raise ValidationError(f"R must be positive, got {format_rational(R)}")
    budget = beta * R
    inst = AuctionInstance(n, R, beta)

    if Fraction(1, n) < R <= Fraction(2, n + 1):
        tag, ell_used, bids = _sliver_response(defender, R)
        guarantee, fidelity = Fraction(ell_one(n, R), n), Fidelity.PROVED
    elif Fraction(2, n + 1) < R <= n:
        if R <= 1:
            tag, ellset = _low_set(defender, R)
        else:
            tag, ellset = _high_set(defender, R)
        ok, failing = satisfies_property_p(ellset, defender, R)
        if not ok:
            raise InvariantViolation(
                tag,
                f"chosen set fails Property P ({failing})",
                {"indices": ellset.indices, "ell": ellset.ell, "profile": defender.as_text(), "R": R},
            )
        ell_used = ellset.ell
        bids = to_adversary_bids(ellset, defender, R)
        guarantee, fidelity = equilibrium(inst).value, Fidelity.PROVED
    else:
        tag = "edge-oracle"
        ell_used = 0
        bids = threshold_best_response(defender, R, max_n=oracle_cap).witness
        # the exact optimum meets min(1/2, 1/n) at R = 1/n for every defender
        guarantee, fidelity = equilibrium(inst).value, Fidelity.PROVED

    achieved = expected_win_exact(bids, defender)
    report = BestResponseReport(
        adversary_bids=bids,
        case_tag=tag,
        ell_used=ell_used,
        guarantee=guarantee,
        achieved=achieved,
        fidelity=fidelity,
    )
    _check_report(report, defender, budget)
    logger.debug(
        "best_response(n=%s, R=%s): case=%s guarantee=%s achieved=%s",
        n,
        format_rational(R),
        tag,
        format_rational(guarantee),
        format_rational(achieved),
    )
    return report


def _check_report(report: BestResponseReport, defender: BidProfile, budget: Fraction) -> None:
    bids = report.adversary_bids
    problems = []
    if bids.n != defender.n:
        problems.append("size")
    if bids.total > budget:
        problems.append("budget")
    # the exhaustive witness may tie on purpose
    if report.case_tag != "edge-oracle" and bids.values & defender.values:
        problems.append("disjointness")
    if report.fidelity is Fidelity.PROVED and report.achieved < report.guarantee:
        problems.append("guarantee")
    if problems:
        raise InvariantViolation(
            report.case_tag,
            "report fails " + ", ".join(problems),
            {
                "defender": defender.as_text(),
                "bids": bids.as_text(),
                "guarantee": report.guarantee,
                "achieved": report.achieved,
            },
        )
