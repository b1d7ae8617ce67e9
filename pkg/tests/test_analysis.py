import warnings

import pytest

from boundwell.analysis import (
    ComparisonRow,
    CriticalRow,
    SubcriticalWarning,
    comparison_row,
    error_summary,
    figure1_data,
    figure2_data,
    figure3_data,
    figure4_data,
)
from boundwell.model import DomainError, PotentialKind, QuantumNumbers


@pytest.fixture(scope="module")
def fig1():
    return figure1_data()


@pytest.fixture(scope="module")
def fig2():
    return figure2_data()


def test_figure1_shape_and_ordering(fig1):
    assert [row.l for row in fig1] == list(range(11))
    errors = [row.abs_err_koksal for row in fig1]
    assert all(b > a for a, b in zip(errors, errors[1:]))
    for row in fig1:
        assert row.abs_err_variational < row.abs_err_koksal
        assert row.xi == 200.0 and row.n == 0


def test_figure1_single_row():
    (row,) = figure1_data(0, 200.0)
    assert row.e_koksal == pytest.approx(-170.5487, abs=1e-3)


def test_figure1_truncates_with_warning():
    with pytest.warns(SubcriticalWarning):
        rows = figure1_data(5, 10.0)
    # l = 2 needs xi > 13.45
    assert [row.l for row in rows] == [0, 1]


def test_figure2(fig2):
    assert [row.xi for row in fig2] == [float(x) for x in range(2, 31, 2)]
    for row in fig2:
        assert row.abs_err_variational < row.abs_err_koksal
    last = fig2[-1]
    for value in (last.e_koksal, last.e_variational, last.e_reference):
        assert -30 < value < 0


def test_figure2_subcritical_point():
    with pytest.warns(SubcriticalWarning):
        (row,) = figure2_data([1.0])
    assert row.subcritical and row.e_reference is None
    assert row.abs_err_koksal is None and row.rel_err_variational is None


def test_figure3_and_4():
    (g0,) = figure3_data(0)
    assert g0.xi_variational == pytest.approx(1.948557, abs=1e-6)
    assert g0.xi_koksal == pytest.approx(3.497, abs=0.01)
    assert g0.xi_reference == pytest.approx(1.34, abs=0.02)
    rows = figure4_data(1)
    assert [r.l for r in rows] == [0, 1]
    assert rows[1].xi_variational == pytest.approx(4.740741, abs=1e-6)
    assert rows[1].xi_reference == pytest.approx(4.54, abs=0.02)
    assert all(r.xi_koksal is None and r.xi_variational > r.xi_reference for r in rows)


def test_figure3_variational_closer_for_every_l():
    for row in figure3_data(10):
        assert abs(row.xi_variational - row.xi_reference) < abs(row.xi_koksal - row.xi_reference)


def test_critical_row_invariant():
    with pytest.raises(AssertionError):
        CriticalRow(PotentialKind.YUKAWA, 0, None, 0.5, 0.8)


def test_row_error_semantics():
    row = ComparisonRow(PotentialKind.GAUSSIAN, 2.0, 0, 0, -0.5, -0.6, 0.0)
    assert row.abs_err_koksal == 0.5 and row.rel_err_koksal is None
    row = ComparisonRow(PotentialKind.YUKAWA, 2.0, 0, 0, None, -0.6, -0.7)
    assert row.abs_err_koksal is None
    assert row.rel_err_variational == pytest.approx(0.1 / 0.7)


def test_comparison_row_yukawa_has_no_koksal(cfg):
    row = comparison_row("yukawa", 5.0, QuantumNumbers(0, 1), cfg)
    assert row.e_koksal is None and row.e_reference < row.e_variational < 0


def test_error_summary_single_row():
    row = ComparisonRow(PotentialKind.GAUSSIAN, 2.0, 0, 0, -0.5, -0.6, -0.75)
    summary = error_summary([row])
    for method, expected in (("koksal", 0.25), ("variational", 0.15)):
        s = summary[method]
        assert s.max_abs == s.mean_abs == pytest.approx(expected)
        assert s.max_rel == s.mean_rel == pytest.approx(expected / 0.75)


def test_error_summary_duplicates(fig1):
    once = error_summary(fig1)
    twice = error_summary(fig1 + fig1)
    for method in once:
        assert twice[method].max_abs == once[method].max_abs
        assert twice[method].mean_abs == pytest.approx(once[method].mean_abs, rel=1e-15)
        assert twice[method].count == 2 * once[method].count


def test_error_summary_figure1(fig1):
    summary = error_summary(fig1)
    assert summary["variational"].max_rel < summary["koksal"].max_rel


def test_error_summary_empty():
    with pytest.raises(DomainError):
        error_summary([])


def test_deterministic(fig2):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert figure2_data() == fig2


def test_parallel_matches_serial(fig2):
    assert figure2_data(workers=2) == fig2
