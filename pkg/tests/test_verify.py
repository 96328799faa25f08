from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from posauction.app.services.bidfiles import load_ledger
from posauction.app.services.verify import (
    case3b_ratios,
    check_j_sets,
    check_oracle_tightness,
    check_spectrum_identities,
    random_profile,
    run_suites,
    summarize,
)
from posauction.core.rational import format_rational
from posauction.model.equilibrium import AuctionInstance


def test_random_profile_sums_to_one() -> None:
    rng = np.random.default_rng(0)
    for n in range(1, 10):
        profile = random_profile(rng, n)
        assert profile.n == n
        assert profile.total == 1


def test_spectrum_suite() -> None:
    assert check_spectrum_identities(Fraction(7, 3)).passed
    assert check_spectrum_identities(Fraction(1, 2), max_ell=20).passed


def test_case3b_contexts_exist() -> None:
    assert Fraction(5, 3) in case3b_ratios(4)


def test_proportional_suites_pass(tmp_path: Path) -> None:
    ledger = tmp_path / "ledger.jsonl"
    results = run_suites(4, 1, samples=5, seed=3, ledger=ledger)
    assert summarize(results) == (len(results), 0), [r.line() for r in results if not r.passed]
    assert not ledger.exists()


def test_sliver_tightness_goes_to_ledger(tmp_path: Path) -> None:
    ledger = tmp_path / "ledger.jsonl"
    result = check_oracle_tightness(AuctionInstance(5, Fraction(1, 4)), ledger=ledger)
    assert result.passed
    (entry,) = load_ledger(ledger)
    assert entry == {"kind": "sliver", "n": 5, "R": "1/4", "stated": "2/5", "measured": "2", "sound": True}


def test_boundary_tightness_goes_to_ledger(tmp_path: Path) -> None:
    ledger = tmp_path / "ledger.jsonl"
    assert check_oracle_tightness(AuctionInstance(4, Fraction(1, 4)), ledger=ledger).passed
    (entry,) = load_ledger(ledger)
    assert entry["kind"] == "boundary"
    assert entry["measured"] == "1/2"


def test_large_n_skips_oracle() -> None:
    result = check_oracle_tightness(AuctionInstance(12, 2), oracle_cap=10)
    assert result.passed
    assert "skipped" in result.detail


@pytest.mark.parametrize("n", range(5, 11))
def test_sliver_ledger_sweep(tmp_path: Path, n: int) -> None:
    ledger = tmp_path / "ledger.jsonl"
    lower, upper = Fraction(1, n), Fraction(2, n + 1)
    ratios = [(lower + upper) / 2, upper]
    for R in ratios:
        assert check_oracle_tightness(AuctionInstance(n, R), ledger=ledger).passed
    entries = load_ledger(ledger)
    assert [entry["R"] for entry in entries] == [format_rational(R) for R in ratios]
    for entry in entries:
        assert entry["kind"] == "sliver"
        assert entry["n"] == n
        assert entry["sound"] is True


@pytest.mark.parametrize("n", [2, 3, 4])
def test_boundary_ledger_sweep(tmp_path: Path, n: int) -> None:
    ledger = tmp_path / "ledger.jsonl"
    assert check_oracle_tightness(AuctionInstance(n, Fraction(1, n)), ledger=ledger).passed
    (entry,) = load_ledger(ledger)
    assert entry["kind"] == "boundary"
    assert entry["R"] == f"1/{n}"
    assert entry["stated"] == format_rational(min(Fraction(1, 2), Fraction(1, n)))
    assert entry["sound"] is True


def test_single_level_two_candidate_contexts() -> None:
    assert Fraction(11, 4) in case3b_ratios(5)
    assert check_j_sets(5, np.random.default_rng(4), 5).passed
