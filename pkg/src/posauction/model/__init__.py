from __future__ import annotations

from .bids import (
    BidProfile,
    choose_delta,
    expected_win_enumerated,
    expected_win_exact,
    make_profile,
    zero_sum_check,
)
from .equilibrium import (
    AuctionInstance,
    Branch,
    EquilibriumResult,
    Fidelity,
    SpectrumDecomposition,
    effective_ratios,
    ell_one,
    ell_two,
    equilibrium,
    f_value,
    limit_ratios,
    r_ell,
    spectrum,
)
from .psi import PsiConstruction, check_psi, optimal_bid_set

__all__ = [
    "AuctionInstance",
    "BidProfile",
    "Branch",
    "EquilibriumResult",
    "Fidelity",
    "PsiConstruction",
    "SpectrumDecomposition",
    "check_psi",
    "choose_delta",
    "effective_ratios",
    "ell_one",
    "ell_two",
    "equilibrium",
    "expected_win_enumerated",
    "expected_win_exact",
    "f_value",
    "limit_ratios",
    "make_profile",
    "optimal_bid_set",
    "r_ell",
    "spectrum",
    "zero_sum_check",
]
