from __future__ import annotations

from .ellsets import (
    EllSet,
    EllSetScratch,
    build_i1,
    build_i2,
    build_i3,
    build_i4,
    build_i5,
    build_j_sets,
    is_lq_set,
    lift_above,
    satisfies_property_p,
    to_adversary_bids,
)
from .response import BestResponseReport, best_response, classify_high_case

__all__ = [
    "BestResponseReport",
    "EllSet",
    "EllSetScratch",
    "best_response",
    "build_i1",
    "build_i2",
    "build_i3",
    "build_i4",
    "build_i5",
    "build_j_sets",
    "classify_high_case",
    "is_lq_set",
    "lift_above",
    "satisfies_property_p",
    "to_adversary_bids",
]
