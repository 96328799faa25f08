"""Seeded Monte Carlo estimate of the adversary's expected win."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..core.errors import ValidationError
from ..model.bids import BidProfile

logger = logging.getLogger("posauction.oracle")

DEFAULT_CHUNK = 10000


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    trials: int
    seed: int

    def as_dict(self) -> Dict[str, Any]:
        return {"mean": self.mean, "stderr": self.stderr, "trials": self.trials, "seed": self.seed}


def _ranks(adversary: BidProfile, defender: BidProfile):
    # exact comparisons happen on Fractions; numpy only sees integer ranks
    levels = sorted(adversary.values | defender.values)
    index = {value: rank for rank, value in enumerate(levels)}
    a = np.array([index[bid] for bid in adversary.bids], dtype=np.int64)
    d = np.array([index[bid] for bid in defender.bids], dtype=np.int64)
    return a, d


def mc_simulate(
    adversary: BidProfile,
    defender: BidProfile,
    trials: int,
    seed: int,
    chunk: int = DEFAULT_CHUNK,
) -> MonteCarloResult:
    """Mean and standard error of the adversary's object count.

    Each trial draws a uniform permutation of the defender bids and settles
    ties with a fair coin; both come from one ``default_rng(seed)`` stream.
    """
    if adversary.n != defender.n:
        raise ValidationError(f"size mismatch: adversary has {adversary.n} bids, defender has {defender.n}")
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    if seed < 0:
        raise ValidationError(f"seed must be a nonnegative integer, got {seed}")
    if chunk < 1:
        raise ValidationError(f"chunk must be >= 1, got {chunk}")

    rng = np.random.default_rng(seed)
    a, d = _ranks(adversary, defender)
    total = 0
    total_sq = 0
    remaining = trials
    while remaining:
        size = min(chunk, remaining)
        perms = rng.permuted(np.tile(d, (size, 1)), axis=1)
        coins = rng.random((size, defender.n)) < 0.5
        wins = (a > perms) | ((a == perms) & coins)
        counts = wins.sum(axis=1, dtype=np.int64)
        total += int(counts.sum())
        total_sq += int((counts * counts).sum())
        remaining -= size

    mean = total / trials
    if trials == 1:
        stderr = 0.0
    else:
        # sample variance with ddof=1, from exact integer sums
        variance = (trials * total_sq - total * total) / (trials * (trials - 1))
        stderr = math.sqrt(max(variance, 0.0) / trials)
    logger.debug("mc_simulate n=%s trials=%s seed=%s: mean=%.6f stderr=%.6f", defender.n, trials, seed, mean, stderr)
    return MonteCarloResult(mean=mean, stderr=stderr, trials=trials, seed=seed)
