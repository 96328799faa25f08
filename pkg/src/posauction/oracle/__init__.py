from __future__ import annotations

from .grid import GridMinmaxResult, grid_minmax, grid_points
from .montecarlo import MonteCarloResult, mc_simulate
from .threshold import (
    LevelMode,
    OracleResult,
    ThresholdLevel,
    dominating_levels,
    threshold_best_response,
    threshold_levels,
)

__all__ = [
    "GridMinmaxResult",
    "LevelMode",
    "MonteCarloResult",
    "OracleResult",
    "ThresholdLevel",
    "dominating_levels",
    "grid_minmax",
    "grid_points",
    "mc_simulate",
    "threshold_best_response",
    "threshold_levels",
]
