from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple


@dataclass(frozen=True)
class GridChunkRequest:
    job_id: str
    ratio: Fraction
    grid_denominator: int
    points: List[Tuple[int, ...]]


@dataclass(frozen=True)
class GridChunkResult:
    job_id: str
    value: Optional[Fraction] = None
    argmin: Optional[Tuple[int, ...]] = None
    candidates: int = 0
    error: Optional[str] = None
