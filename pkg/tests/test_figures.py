import io
import logging
from fractions import Fraction

import pytest

from posauction.core.errors import DomainError
from posauction.figures import (
    CSV_HEADER,
    convergence_gaps_shrinking,
    convergence_table,
    figure_grid,
    figure_preset,
    ratio_row,
    write_ratio_csv,
)
from posauction.model.equilibrium import limit_ratios


def _key(row):
    return (row.n, row.R, row.equilibrium, row.e_a, row.e_d)


def test_figure_grid_rows() -> None:
    assert (3, 1, Fraction(5, 3), Fraction(10, 9), Fraction(8, 9)) in [_key(r) for r in figure_grid(3, [1])]
    assert _key(figure_grid(2, [1])[-1]) == (2, 1, 1, 1, 1)
    single = ratio_row(1, 2)
    assert (single.equilibrium, single.e_d, single.e_a) == (1, 0, Fraction(3, 2))


def test_figure_grid_order() -> None:
    rows = figure_grid(2, [1, 2])
    assert [(row.n, row.R) for row in rows] == [(1, 1), (2, 1), (1, 2), (2, 2)]


def test_figure_grid_rejects() -> None:
    with pytest.raises(DomainError):
        figure_grid(0, [1])
    with pytest.raises(DomainError):
        figure_grid(3, [0])


def test_csv_output() -> None:
    stream = io.StringIO()
    count = write_ratio_csv(figure_grid(3, [1]), stream)
    lines = stream.getvalue().splitlines()
    assert count == 3
    assert lines[0] == ",".join(CSV_HEADER)
    assert "3,1,5/3,10/9,8/9,proved" in lines


def test_csv_decimals() -> None:
    stream = io.StringIO()
    write_ratio_csv(figure_grid(3, [1]), stream, decimals=4)
    lines = stream.getvalue().splitlines()
    assert lines[0].endswith("equilibrium_dec,E_A_dec,E_D_dec")
    assert lines[-1].endswith("1.6667,1.1111,0.8889")


@pytest.mark.parametrize(
    "R, n, tolerance",
    [
        (20, 10**5, Fraction(5, 1000)),
        (1, 10**4, Fraction(1, 100)),
        (Fraction(1, 2), 10**4, Fraction(1, 100)),
    ],
)
def test_convergence_to_limit(R, n, tolerance) -> None:
    (row,) = convergence_table(R, [n])
    assert row.limit_gap <= tolerance
    assert abs(row.e_d - limit_ratios(R)[1]) == row.limit_gap


def test_gap_shrinks_at_equal_budgets() -> None:
    assert convergence_gaps_shrinking(1)


def test_gap_growth_is_logged(caplog) -> None:
    with caplog.at_level(logging.WARNING, logger="posauction.figures"):
        assert not convergence_gaps_shrinking(1, [1000, 100])
    assert "Limit gap grows" in caplog.text


def test_presets() -> None:
    low = figure_preset("low")
    assert len(low.r_values) == 20
    assert (low.r_values[0], low.r_values[-1]) == (Fraction(1, 20), 1)
    assert figure_preset("HIGH").r_values[-1] == 20
    assert len(figure_preset("curves").r_values) == 6
    with pytest.raises(DomainError):
        figure_preset("wide")
