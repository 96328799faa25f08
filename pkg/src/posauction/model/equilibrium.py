"""Closed-form equilibrium quantities.

R_l, f(l), the branch thresholds l1/l2, the equilibrium value of an auction
instance, the per-l spectrum decomposition and the effective winning ratios.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple

from ..core.errors import DomainError, InvariantViolation
from ..core.rational import RationalLike, as_rational, format_rational, integral_floor, strict_multiple_floor

logger = logging.getLogger("posauction.model")


class Branch(str, Enum):
    BELOW_RANGE = "belowRange"
    AT_LOWER_BOUNDARY = "atLowerBoundary"
    ZEROS_PLUS_UNBEATABLE = "zerosPlusUnbeatable"
    PROPORTIONAL = "proportional"
    ABOVE_RANGE = "aboveRange"


class Fidelity(str, Enum):
    PROVED = "proved"
    STATED = "stated"


@dataclass(frozen=True)
class AuctionInstance:
    n: int
    ratio: Fraction
    beta: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "ratio", as_rational(self.ratio))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.ratio <= 0:
            raise DomainError(f"R must be positive, got {format_rational(self.ratio)}")
        if self.beta <= 0:
            raise DomainError(f"beta must be positive, got {format_rational(self.beta)}")

    @property
    def adversary_budget(self) -> Fraction:
        return self.beta * self.ratio


@dataclass(frozen=True)
class SpectrumDecomposition:
    ell: int
    r_ell: Fraction
    delta_ell: Fraction
    k: int
    d: int
    d_prime: int
    h: int
    h_prime: int


@dataclass(frozen=True)
class EquilibriumResult:
    value: Fraction
    branch: Branch
    fidelity: Fidelity

    def describe(self) -> str:
        return f"{format_rational(self.value)} (branch={self.branch.value}, fidelity={self.fidelity.value})"


def _check_ell(ell: int) -> None:
    if isinstance(ell, bool) or not isinstance(ell, int) or ell < 1:
        raise DomainError(f"ell must be an integer >= 1, got {ell!r}")


def _pair_count(ell: int) -> int:
    return ell * (ell + 1) // 2


def r_ell(R: RationalLike, ell: int) -> Fraction:
    _check_ell(ell)
    return strict_multiple_floor(R, Fraction(2, ell * (ell + 1)))


def f_value(n: int, R: RationalLike, ell: int) -> Fraction:
    _check_ell(ell)
    if ell > n:
        raise DomainError(f"ell must satisfy 1 <= ell <= n, got ell={ell}, n={n}")
    return n - ell + _pair_count(ell) * r_ell(R, ell) / n


def ell_one(n: int, R: RationalLike) -> int:
    R = as_rational(R)
    if not Fraction(1, n) < R <= Fraction(2, n + 1):
        raise DomainError(f"l1 is defined for 1/n < R <= 2/(n+1); got n={n}, R={format_rational(R)}")
    return int(integral_floor(2 * n - 2 / R + 1))


def ell_two(n: int, R: RationalLike) -> int:
    R = as_rational(R)
    if not Fraction(2, n + 1) < R <= n:
        raise DomainError(f"l2 is defined for 2/(n+1) < R <= n; got n={n}, R={format_rational(R)}")
    return min(n, math.floor(n / R))


def equilibrium(inst: AuctionInstance) -> EquilibriumResult:
    n, R = inst.n, inst.ratio
    if R < Fraction(1, n):
        result = EquilibriumResult(Fraction(0), Branch.BELOW_RANGE, Fidelity.PROVED)
    elif R == Fraction(1, n):
        result = EquilibriumResult(min(Fraction(1, 2), Fraction(1, n)), Branch.AT_LOWER_BOUNDARY, Fidelity.STATED)
    elif R <= Fraction(2, n + 1):
        result = EquilibriumResult(Fraction(ell_one(n, R), n), Branch.ZEROS_PLUS_UNBEATABLE, Fidelity.STATED)
    elif R <= n:
        result = EquilibriumResult(f_value(n, R, ell_two(n, R)), Branch.PROPORTIONAL, Fidelity.PROVED)
    else:
        result = EquilibriumResult(Fraction(n), Branch.ABOVE_RANGE, Fidelity.PROVED)
    logger.debug("equilibrium(n=%s, R=%s) -> %s", n, format_rational(R), result.describe())
    return result


def spectrum(R: RationalLike, ell: int) -> SpectrumDecomposition:
    """Decompose R_l into k + 2d/l + 2h/(l(l+1)) and k + 2d'/(l+1) + 2h'/(l(l+1))."""
    _check_ell(ell)
    R = as_rational(R)
    pairs = _pair_count(ell)
    base = r_ell(R, ell)
    delta = (R - base) * pairs
    k = math.floor(base)
    units = (base - k) * pairs
    if units.denominator != 1:
        raise InvariantViolation("spectrum", "R_l - k is not a multiple of 2/(l(l+1))", {"R": R, "ell": ell})
    m = int(units)
    d, h = divmod(m, ell + 1)
    d_prime, h_prime = divmod(m, ell)
    result = SpectrumDecomposition(
        ell=ell,
        r_ell=base,
        delta_ell=delta,
        k=k,
        d=d,
        d_prime=d_prime,
        h=h,
        h_prime=h_prime,
    )
    _check_spectrum(R, result)
    return result


def _check_spectrum(R: Fraction, sp: SpectrumDecomposition) -> None:
    ell = sp.ell
    unit = Fraction(2, ell * (ell + 1))
    problems = []
    if not 0 < sp.delta_ell <= 1:
        problems.append("0 < delta <= 1")
    if R != sp.r_ell + sp.delta_ell * unit:
        problems.append("R = R_l + 2 delta/(l(l+1))")
    if sp.r_ell != sp.k + Fraction(2 * sp.d, ell) + sp.h * unit:
        problems.append("R_l = k + 2d/l + 2h/(l(l+1))")
    if sp.r_ell != sp.k + Fraction(2 * sp.d_prime, ell + 1) + sp.h_prime * unit:
        problems.append("R_l = k + 2d'/(l+1) + 2h'/(l(l+1))")
    if not (2 * sp.d < ell and 2 * sp.d_prime < ell + 1 and 0 <= sp.h <= ell and 0 <= sp.h_prime < ell):
        problems.append("range bounds")
    if problems:
        raise InvariantViolation("spectrum", "; ".join(problems), {"R": R, "ell": ell})


def effective_ratios(inst: AuctionInstance) -> Tuple[Fraction, Fraction]:
    n, R = inst.n, inst.ratio
    value = equilibrium(inst).value
    e_a = value * (R + 1) / (n * R)
    e_d = (n - value) * (R + 1) / n
    return e_a, e_d


def limit_ratios(R: RationalLike) -> Tuple[Fraction, Fraction]:
    R = as_rational(R)
    if R <= 0:
        raise DomainError(f"R must be positive, got {format_rational(R)}")
    if R >= 1:
        return (2 * R - 1) * (R + 1) / (2 * R * R), (R + 1) / (2 * R)
    return (R + 1) / 2, (2 - R) * (R + 1) / 2
