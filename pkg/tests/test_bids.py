from fractions import Fraction

import numpy as np
import pytest

from posauction.app.services.verify import random_profile
from posauction.core.errors import ValidationError
from posauction.model.bids import (
    choose_delta,
    expected_win_enumerated,
    expected_win_exact,
    make_profile,
    zero_sum_check,
)
from posauction.model.equilibrium import AuctionInstance
from posauction.model.psi import optimal_bid_set


def _psi(n, R):
    return optimal_bid_set(AuctionInstance(n, R)).bids


def test_profile_accessors() -> None:
    profile = make_profile(["3/10", "1/10", "2/5", "1/5"])
    assert profile.n == 4
    assert profile.beta(0) == 0
    assert profile.beta(1) == Fraction(1, 10)
    assert profile.beta(4) == Fraction(2, 5)
    assert profile.top_sum(2) == Fraction(7, 10)
    assert profile.total == 1
    assert profile.count_below(Fraction(1, 5)) == 1
    assert profile.count_at_most(Fraction(1, 5)) == 2
    with pytest.raises(ValidationError):
        profile.beta(5)
    with pytest.raises(ValidationError):
        profile.top_sum(5)


def test_make_profile_rejects() -> None:
    with pytest.raises(ValidationError):
        make_profile([])
    with pytest.raises(ValidationError):
        make_profile(["-1/2", "1"])


def test_expected_win_examples() -> None:
    defender = _psi(4, 1)
    assert expected_win_exact(make_profile([0, 0, 0, "1/2"]), defender) == 1
    assert expected_win_exact(defender, defender) == 2


def test_expected_win_size_mismatch() -> None:
    with pytest.raises(ValidationError):
        expected_win_exact(make_profile([1, 2]), make_profile([1]))


def test_exact_matches_enumeration() -> None:
    rng = np.random.default_rng(5)
    for _ in range(100):
        n = int(rng.integers(1, 6))
        adversary = random_profile(rng, n, ceiling=4)
        defender = random_profile(rng, n, ceiling=4)
        order = list(adversary.bids)
        rng.shuffle(order)
        assert expected_win_enumerated(order, defender) == expected_win_exact(adversary, defender)


def test_enumeration_cap() -> None:
    profile = make_profile([1] * 9)
    with pytest.raises(ValidationError):
        expected_win_enumerated(list(profile.bids), profile)


def test_zero_sum() -> None:
    rng = np.random.default_rng(9)
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        adversary = random_profile(rng, n, ceiling=5)
        defender = random_profile(rng, n, ceiling=5)
        w_a, w_d = zero_sum_check(adversary, defender)
        assert w_a + w_d == n


def test_choose_delta_skips_defender_values() -> None:
    defender = make_profile(["1/2"])
    assert choose_delta(Fraction(1, 2), defender, [Fraction(0)]) == Fraction(1, 4)
    assert choose_delta(Fraction(1, 3), defender, [Fraction(0)]) == Fraction(1, 3)
