"""Exact equilibria, optimal bid sets and best responses for two-bidder
position-randomized auctions."""

from __future__ import annotations

from .constructions import BestResponseReport, best_response
from .core import (
    CapacityError,
    DomainError,
    InvalidInputError,
    InvariantViolation,
    PosAuctionError,
    Rational,
    UsageError,
    ValidationError,
    format_rational,
    parse_rational,
)
from .figures import RatioRow, convergence_table, figure_grid, figure_preset
from .model import (
    AuctionInstance,
    BidProfile,
    EquilibriumResult,
    PsiConstruction,
    effective_ratios,
    equilibrium,
    expected_win_exact,
    limit_ratios,
    make_profile,
    optimal_bid_set,
    spectrum,
)
from .oracle import grid_minmax, mc_simulate, threshold_best_response

__version__ = "0.1.0"

__all__ = [
    "AuctionInstance",
    "BestResponseReport",
    "BidProfile",
    "CapacityError",
    "DomainError",
    "EquilibriumResult",
    "InvalidInputError",
    "InvariantViolation",
    "PosAuctionError",
    "PsiConstruction",
    "Rational",
    "RatioRow",
    "UsageError",
    "ValidationError",
    "__version__",
    "best_response",
    "convergence_table",
    "effective_ratios",
    "equilibrium",
    "expected_win_exact",
    "figure_grid",
    "figure_preset",
    "format_rational",
    "grid_minmax",
    "limit_ratios",
    "make_profile",
    "mc_simulate",
    "optimal_bid_set",
    "parse_rational",
    "spectrum",
    "threshold_best_response",
]
