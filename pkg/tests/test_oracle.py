from fractions import Fraction

import numpy as np
import pytest

from posauction.app.services.verify import random_profile
from posauction.core.errors import CapacityError, ValidationError
from posauction.model.bids import expected_win_exact, make_profile
from posauction.model.equilibrium import AuctionInstance, Fidelity, equilibrium
from posauction.model.psi import optimal_bid_set
from posauction.oracle.grid import grid_minmax, grid_points, split_points
from posauction.oracle.montecarlo import mc_simulate
from posauction.oracle.threshold import LevelMode, dominating_levels, threshold_best_response, threshold_levels


def _psi(n, R):
    return optimal_bid_set(AuctionInstance(n, R)).bids


def test_threshold_examples() -> None:
    assert threshold_best_response(make_profile(["1/4"] * 4), 1).value == 3
    assert threshold_best_response(_psi(4, 1), 1).value == Fraction(9, 4)
    single = threshold_best_response(make_profile([1]), 1)
    assert single.value == Fraction(1, 2)
    assert single.witness.as_text() == ("1",)
    assert single.levels[0].mode is LevelMode.TIE_AT


def test_witness_realizes_value() -> None:
    defender = _psi(5, 2)
    result = threshold_best_response(defender, 2)
    assert expected_win_exact(result.witness, defender) == result.value
    assert result.witness.total <= 2
    assert result.as_dict()["value"] == "4"


def test_threshold_levels_cover_zero() -> None:
    levels = threshold_levels(make_profile(["1/2", "1/2"]))
    assert [level.describe() for level in levels] == ["tieAt(0)", "justAbove(0)", "tieAt(1/2)", "justAbove(1/2)"]
    assert [level.win_weight for level in levels] == [0, 0, Fraction(1, 2), 1]


def test_threshold_caps_and_validation() -> None:
    with pytest.raises(CapacityError):
        threshold_best_response(make_profile([1] * 11), 1)
    with pytest.raises(ValidationError):
        threshold_best_response(make_profile([1, 1]), 0)
    assert threshold_best_response(make_profile([1] * 11), 1, max_n=11).value >= 0


@pytest.mark.parametrize("n", range(1, 9))
def test_tight_against_psi_in_proved_range(n) -> None:
    ratios = {Fraction(p, q) for q in (1, 2, 3, 4) for p in range(1, 4 * n + 1)}
    for R in sorted(ratios):
        inst = AuctionInstance(n, R)
        result = equilibrium(inst)
        measured = threshold_best_response(optimal_bid_set(inst).bids, R).value
        if result.fidelity is Fidelity.PROVED:
            assert measured == result.value, (n, R)
        else:
            assert measured >= result.value, (n, R)


def test_dominating_levels() -> None:
    rng = np.random.default_rng(13)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        adversary = random_profile(rng, n, ceiling=6)
        defender = random_profile(rng, n, ceiling=6)
        levels = dominating_levels(adversary, defender)
        assert sum(level.win_weight for level in levels) == expected_win_exact(adversary, defender)
        assert sum(level.base for level in levels) <= adversary.total


def test_grid_minmax_small() -> None:
    result = grid_minmax(2, 1, 6)
    assert result.value == 1
    assert result.argmin.as_text() == ("0", "1")
    assert result.candidates == 16
    assert threshold_best_response(_psi(2, 1), 1).value == result.value


def test_grid_minmax_three_bids() -> None:
    result = grid_minmax(3, 1, 6)
    assert result.value == Fraction(5, 3)
    assert threshold_best_response(_psi(3, 1), 1).value == result.value


def test_grid_minmax_in_sliver_range() -> None:
    R = Fraction(3, 5)
    result = grid_minmax(2, R, 15)
    psi = _psi(2, R)
    assert psi.as_text() == ("0", "1")
    assert equilibrium(AuctionInstance(2, R)).value <= result.value <= threshold_best_response(psi, R).value


def test_grid_caps() -> None:
    with pytest.raises(CapacityError):
        grid_minmax(5, 1, 6)
    with pytest.raises(CapacityError):
        grid_minmax(2, 1, 16)
    with pytest.raises(ValidationError):
        grid_minmax(2, 0, 6)


def test_grid_points_order_and_split() -> None:
    points = list(grid_points(2, 2))
    assert points == [(0, 0), (0, 1), (0, 2), (1, 1)]
    chunks = split_points(points, 3)
    assert [p for chunk in chunks for p in chunk] == points


def test_grid_workers_match_sequential() -> None:
    sequential = grid_minmax(2, 1, 6)
    parallel = grid_minmax(2, 1, 6, workers=2)
    assert parallel == sequential


def test_monte_carlo_deterministic_case() -> None:
    result = mc_simulate(make_profile([0, 0, 0, "1/2"]), _psi(4, 1), trials=100000, seed=0)
    assert result.mean == 1.0
    assert result.stderr == 0.0


def test_monte_carlo_agrees_with_exact() -> None:
    defender = _psi(4, 1)
    result = mc_simulate(defender, defender, trials=100000, seed=1)
    exact = float(expected_win_exact(defender, defender))
    assert abs(result.mean - exact) <= 4 * result.stderr


def test_monte_carlo_agrees_on_random_pairs() -> None:
    rng = np.random.default_rng(29)
    agreeing = 0
    for seed in range(20):
        n = int(rng.integers(2, 7))
        adversary = random_profile(rng, n, ceiling=8)
        defender = random_profile(rng, n, ceiling=8)
        result = mc_simulate(adversary, defender, trials=100000, seed=seed)
        exact = float(expected_win_exact(adversary, defender))
        if abs(result.mean - exact) <= 4 * result.stderr:
            agreeing += 1
    assert agreeing >= 19


def test_monte_carlo_reproducible() -> None:
    adversary = make_profile(["1/4"] * 4)
    defender = _psi(4, 1)
    first = mc_simulate(adversary, defender, trials=1, seed=42)
    second = mc_simulate(adversary, defender, trials=1, seed=42)
    assert first == second
    assert first.stderr == 0.0


def test_monte_carlo_validation() -> None:
    with pytest.raises(ValidationError):
        mc_simulate(make_profile([1]), make_profile([1, 1]), trials=10, seed=0)
    with pytest.raises(ValidationError):
        mc_simulate(make_profile([1]), make_profile([1]), trials=0, seed=0)
    with pytest.raises(ValidationError):
        mc_simulate(make_profile([1]), make_profile([1]), trials=1, seed=-1)
