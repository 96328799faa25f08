"""Executable invariant suites behind ``posauction verify``.

Each suite returns one :class:`PropertyResult`; a failing suite carries the
first counterexample it met so the CLI can dump it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...constructions.ellsets import (
    EllSetScratch,
    build_i1,
    build_i2,
    build_i3,
    build_i4,
    build_i5,
    build_j_sets,
    satisfies_property_p,
)
from ...constructions.response import best_response, classify_high_case
from ...core.errors import InvariantViolation, PosAuctionError
from ...core.rational import RationalLike, as_rational, format_rational
from ...model.bids import BidProfile, make_profile, zero_sum_check
from ...model.equilibrium import AuctionInstance, Branch, Fidelity, equilibrium, spectrum
from ...model.psi import check_psi, optimal_bid_set
from ...oracle.threshold import DEFAULT_MAX_N, threshold_best_response
from .bidfiles import append_ledger, ledger_record

logger = logging.getLogger("posauction.verify")

SPECTRUM_MAX_ELL = 200
RANDOM_BID_CEILING = 20


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str
    counterexample: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "counterexample": self.counterexample,
        }

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def random_profile(rng: np.random.Generator, n: int, ceiling: int = RANDOM_BID_CEILING) -> BidProfile:
    """n rational bids summing to 1; at least one bid is positive."""
    weights = [int(w) for w in rng.integers(0, ceiling + 1, size=n)]
    if not any(weights):
        weights[int(rng.integers(0, n))] = 1
    total = sum(weights)
    return make_profile(Fraction(w, total) for w in weights)


def _failure(name: str, exc: PosAuctionError, extra: Optional[Dict[str, Any]] = None) -> PropertyResult:
    detail: Dict[str, Any] = dict(extra or {})
    if isinstance(exc, InvariantViolation):
        detail.update({"case": exc.case_tag, **exc.detail})
    return PropertyResult(name, False, str(exc), detail)


def check_spectrum_identities(R: Fraction, max_ell: int = SPECTRUM_MAX_ELL) -> PropertyResult:
    name = "spectrum-identities"
    try:
        decompositions = [spectrum(R, ell) for ell in range(1, max_ell + 2)]
    except PosAuctionError as exc:
        return _failure(name, exc, {"R": R})
    for sp in decompositions[:-1]:
        step = sp.d_prime - sp.d
        if step not in (0, 1):
            return PropertyResult(name, False, f"d' - d = {step} at l={sp.ell}", {"R": R, "ell": sp.ell})
        expected_h = sp.d + sp.h if step == 0 else sp.d + sp.h - sp.ell
        if sp.h_prime != expected_h:
            return PropertyResult(name, False, f"h' = {sp.h_prime}, expected {expected_h}", {"R": R, "ell": sp.ell})
    if R > 1:
        ks = {sp.k for sp in decompositions}
        if len(ks) != 1:
            return PropertyResult(name, False, f"k varies with l: {sorted(ks)}", {"R": R})
        for sp, nxt in zip(decompositions, decompositions[1:]):
            if nxt.d != sp.d_prime:
                return PropertyResult(
                    name, False, f"d at l={nxt.ell} differs from d' at l={sp.ell}", {"R": R, "ell": sp.ell}
                )
    return PropertyResult(name, True, f"l = 1..{max_ell} for R={format_rational(R)}")


def check_psi_construction(inst: AuctionInstance) -> PropertyResult:
    name = "psi-construction"
    try:
        construction = optimal_bid_set(inst)
        check_psi(construction)
    except PosAuctionError as exc:
        return _failure(name, exc, {"n": inst.n, "R": inst.ratio})
    return PropertyResult(name, True, f"{construction.branch.value}, total {format_rational(construction.bids.total)}")


def _constructor_calls(profile: BidProfile) -> List[Tuple[str, Callable[[], Any]]]:
    n = profile.n
    calls: List[Tuple[str, Callable[[], Any]]] = []
    for ell in range(1, n + 1):
        for d in range(ell // 2 + 1):
            calls.append((f"i1(l={ell}, d={d})", lambda ell=ell, d=d: build_i1(ell, d, profile)))
        for h in range((ell + 1) // 2 + 1):
            calls.append((f"i2(l={ell}, h={h})", lambda ell=ell, h=h: build_i2(ell, h, profile)))
        for k in (1, 2):
            for h in range(ell + 1):
                calls.append((f"i3(l={ell}, k={k}, h={h})", lambda ell=ell, k=k, h=h: build_i3(ell, k, h, profile)))
        if ell < n:
            for d in range((ell + 1) // 2 + 1):
                calls.append((f"i5(l={ell}, d={d})", lambda ell=ell, d=d: build_i5(ell, d, profile)))
    # the pair searches need beta_{n-l} = 0, which holds at l = n
    for d in range(1, n // 2 + 1):
        for h in range(n + 1):
            calls.append((f"i4(l={n}, d={d}, h={h})", lambda d=d, h=h: build_i4(n, d, h, profile)))
    return calls


def check_constructor_sweeps(n: int, rng: np.random.Generator, samples: int) -> PropertyResult:
    name = "constructor-sweeps"
    built = 0
    for _ in range(samples):
        profile = random_profile(rng, n)
        for ell in range(1, n + 1):
            problems = EllSetScratch(profile, ell).failures()
            if problems:
                return PropertyResult(
                    name, False, "scratch bounds fail: " + ", ".join(problems), {"ell": ell, "profile": profile.as_text()}
                )
        for label, call in _constructor_calls(profile):
            try:
                call()
            except PosAuctionError as exc:
                return _failure(name, exc, {"call": label, "profile": profile.as_text()})
            built += 1
    return PropertyResult(name, True, f"{built} sets over {samples} profiles of size {n}")


def case3b_ratios(n: int, max_denominator: int = 12) -> List[Fraction]:
    """Ratios 1 < R <= n with denominator <= max_denominator where the two-candidate case applies."""
    ratios = sorted({Fraction(p, q) for q in range(1, max_denominator + 1) for p in range(q + 1, n * q + 1)})
    return [R for R in ratios if classify_high_case(n, R).case == "case3b"]


def check_j_sets(n: int, rng: np.random.Generator, samples: int) -> PropertyResult:
    name = "j-sets"
    try:
        contexts = case3b_ratios(n)
    except PosAuctionError as exc:
        return _failure(name, exc, {"n": n})
    if not contexts:
        return PropertyResult(name, True, f"no two-candidate contexts at n={n}")
    for _ in range(samples):
        profile = random_profile(rng, n)
        for R in contexts:
            ell = math.floor(n / R)
            sp = spectrum(R, ell)
            try:
                first, second = build_j_sets(ell, profile, sp)
            except PosAuctionError as exc:
                return _failure(name, exc, {"R": R, "profile": profile.as_text()})
            ok, failing = satisfies_property_p(first, profile, R)
            if not ok and failing in ("P1", "P2"):
                return PropertyResult(
                    name,
                    False,
                    f"first candidate fails {failing}",
                    {"R": R, "indices": first.indices, "profile": profile.as_text()},
                )
            if second.size > n:
                return PropertyResult(name, False, "second candidate fails P1", {"R": R, "profile": profile.as_text()})
    return PropertyResult(name, True, f"{len(contexts)} contexts x {samples} profiles")


def check_best_response_soundness(
    n: int,
    R: Fraction,
    rng: np.random.Generator,
    samples: int,
    oracle_cap: int = DEFAULT_MAX_N,
) -> PropertyResult:
    name = "best-response-soundness"
    if (R <= Fraction(1, n) or R > n) and n > oracle_cap:
        return PropertyResult(name, True, f"skipped, edge ratio needs the oracle and n={n} is above cap {oracle_cap}")
    for _ in range(samples):
        profile = random_profile(rng, n)
        try:
            report = best_response(profile, R, oracle_cap=oracle_cap)
            zero_sum_check(report.adversary_bids, profile)
            optimum = threshold_best_response(profile, R, max_n=oracle_cap).value if n <= oracle_cap else None
        except PosAuctionError as exc:
            return _failure(name, exc, {"R": R, "profile": profile.as_text()})
        if report.fidelity is Fidelity.PROVED and report.achieved < report.guarantee:
            return PropertyResult(name, False, "achieved below guarantee", report.as_dict())
        if optimum is not None and optimum < report.achieved:
            return PropertyResult(name, False, "oracle optimum below constructive answer", report.as_dict())
    suffix = "" if n <= oracle_cap else " (oracle comparison skipped above cap)"
    return PropertyResult(name, True, f"{samples} random defenders{suffix}")


def _ledger_kind(inst: AuctionInstance) -> str:
    if equilibrium(inst).branch is Branch.AT_LOWER_BOUNDARY:
        return "boundary"
    return "sliver"


def check_oracle_tightness(
    inst: AuctionInstance,
    oracle_cap: int = DEFAULT_MAX_N,
    ledger: Optional[Path] = None,
) -> PropertyResult:
    """Oracle against the optimal bid set; equality when proved, sound direction otherwise."""
    name = "oracle-tightness"
    if inst.n > oracle_cap:
        return PropertyResult(name, True, f"skipped, n={inst.n} above oracle cap {oracle_cap}")
    try:
        construction = optimal_bid_set(inst)
        measured = threshold_best_response(construction.bids, inst.ratio, max_n=oracle_cap).value
    except PosAuctionError as exc:
        return _failure(name, exc, {"n": inst.n, "R": inst.ratio})
    result = equilibrium(inst)
    context = {"n": inst.n, "R": inst.ratio, "stated": result.value, "measured": measured}
    if result.fidelity is Fidelity.PROVED:
        if measured != result.value:
            return PropertyResult(name, False, "oracle value differs from equilibrium", context)
        return PropertyResult(name, True, f"oracle = equilibrium = {format_rational(measured)}")
    if ledger is not None:
        append_ledger([ledger_record(_ledger_kind(inst), inst.n, inst.ratio, result.value, measured)], ledger)
    if measured < result.value:
        return PropertyResult(name, False, "oracle value below the stated equilibrium", context)
    return PropertyResult(
        name,
        True,
        f"stated {format_rational(result.value)}, measured {format_rational(measured)} (sound direction only)",
    )


def run_suites(
    n: int,
    R: RationalLike,
    samples: int = 50,
    seed: int = 0,
    oracle_cap: int = DEFAULT_MAX_N,
    ledger: Optional[Path] = None,
) -> List[PropertyResult]:
    R = as_rational(R)
    inst = AuctionInstance(n, R)
    rng = np.random.default_rng(seed)
    results = [
        check_spectrum_identities(R),
        check_psi_construction(inst),
        check_constructor_sweeps(n, rng, samples),
        check_j_sets(n, rng, max(1, samples // 10)),
        check_best_response_soundness(n, R, rng, samples, oracle_cap=oracle_cap),
        check_oracle_tightness(inst, oracle_cap=oracle_cap, ledger=ledger),
    ]
    for result in results:
        if not result.passed:
            logger.warning("%s", result.line())
    return results


def summarize(results: Sequence[PropertyResult]) -> Tuple[int, int]:
    passed = sum(1 for result in results if result.passed)
    return passed, len(results) - passed
