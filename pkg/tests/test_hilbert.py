import pytest

from relcoeff import (
    DimensionMismatch,
    E0Mismatch,
    NonPolynomialWindow,
    NotAReduction,
    coefficients,
    hs_table,
    ideal,
    ideal_power,
    relative_coefficients,
    series,
    series_reconstruct,
    w_series_check,
    RingPresentation,
)
from relcoeff.hilbert import _divide_by_z_minus_1, _sub_poly

import staircase_oracle as oracle


def test_table_maximal_ideal(reg2):
    t = hs_table(reg2.maximal_ideal(), 4)
    assert t.values == (1, 3, 6, 10, 15)
    assert t.first_differences == (1, 2, 3, 4, 5)


def test_table_square_of_maximal(reg2):
    t = hs_table(ideal_power(reg2.maximal_ideal(), 2), 3)
    assert t.values == (3, 10, 21, 36)
    assert [(2 * n + 3) * (2 * n + 2) // 2 for n in range(4)] == list(t.values)


def test_reconstruct_square(reg2):
    t = hs_table(ideal_power(reg2.maximal_ideal(), 2), 8)
    hs = series_reconstruct(t, 2)
    assert hs.numerator == (3, 1)
    assert coefficients(hs).e == (4, 1, 0)


def test_reconstruct_needs_window(reg2):
    t = hs_table(reg2.maximal_ideal(), 2)
    with pytest.raises(NonPolynomialWindow):
        series_reconstruct(t, 2, window=5)


def test_dimension_too_large_detected(reg2):
    t = hs_table(reg2.maximal_ideal(), 8)
    with pytest.raises(DimensionMismatch):
        series_reconstruct(t, 3)


def test_dimension_validation_lazy():
    bad = RingPresentation(["x", "y"], [], 1, label="wrong-dim")
    m = bad.maximal_ideal()
    with pytest.raises(DimensionMismatch):
        series(m)


def test_series_display(reg2):
    _, hs = series(ideal_power(reg2.maximal_ideal(), 2))
    assert hs.display() == "(3 + t)/(1-t)^2"


def test_coefficients_against_oracle(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    _, hs = series(I)
    engine = coefficients(hs).e
    values = oracle.hilbert_values([(2, 0), (0, 2)], 8)
    assert engine == oracle.coefficients_from_values(values)


def test_coefficients_examples():
    # pure h-vector arithmetic, no ring needed
    from relcoeff.hilbert import HilbertSeries

    assert coefficients(HilbertSeries((4, 0, 1, 1), 3, 0)).e == (6, 5, 4, 1)
    assert coefficients(HilbertSeries((3, 1), 2, 0)).e == (4, 1, 0)
    assert coefficients(HilbertSeries((2, 2), 2, 0)).e[:2] == (4, 2)


def test_exact_division_by_z_minus_1():
    assert _divide_by_z_minus_1((-1, 1)) == (1,)
    assert _divide_by_z_minus_1((-1, 3, -3, 1)) == (1, -2, 1)
    with pytest.raises(E0Mismatch):
        _divide_by_z_minus_1((1, 1))


def test_relative_coefficients_identity(reg2):
    m = reg2.maximal_ideal()
    rc = relative_coefficients(m, m)
    assert rc.c == (0, 0)
    assert rc.r == ()


def test_relative_coefficients_staircase(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    rc = relative_coefficients(I, J)
    assert rc.r == (1,)
    assert rc.c == (1, 0)
    assert rc.e_inner.e == (4, 0, 0)
    assert rc.e_outer.e == (4, 1, 0)


def test_relative_coefficients_requires_reduction(reg2):
    I = ideal(reg2, ["x^3", "y^3"])
    J = ideal_power(reg2.maximal_ideal(), 2)  # I not a reduction of J
    with pytest.raises(NotAReduction):
        relative_coefficients(I, J)


def test_w_series_staircase(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    result = w_series_check(I, J, 6)
    assert result["observed"] == tuple(range(1, 8))
    assert result["first_mismatch"] is None


def test_w_series_identity(reg2):
    m = reg2.maximal_ideal()
    result = w_series_check(m, m, 4)
    assert set(result["observed"]) == {0}
    assert result["first_mismatch"] is None


def test_sub_poly():
    assert _sub_poly((1, 2), (1,)) == (0, 2)
    assert _sub_poly((1,), (1, 2)) == (0, -2)
