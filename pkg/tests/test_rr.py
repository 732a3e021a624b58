import pytest

from relcoeff import (
    FlagContradiction,
    IdealFlags,
    ideal,
    ideal_power,
    local_equal,
    rr_closed_check,
    rr_closure,
    rr_monotonicity_check,
    rr_series,
)
from relcoeff.ring import require_finite


def witness_ideal(reg2):
    return ideal(reg2, ["x^4", "x^3*y", "x*y^3", "y^4"])


def test_closure_adds_middle_monomial(reg2):
    K = witness_ideal(reg2)
    res = rr_closure(K, 1)
    assert len(res.new_generators) == 1
    assert res.new_generators[0].terms[0][0] == (2, 2)
    assert local_equal(res.closure, ideal_power(reg2.maximal_ideal(), 4))


def test_closure_of_complete_intersection_is_trivial(reg2):
    K = ideal(reg2, ["x^2", "y^2"])
    for n in (1, 2, 3):
        res = rr_closure(K, n)
        assert res.new_generators == ()
        assert local_equal(res.closure, ideal_power(K, n))


def test_closure_idempotent(reg2):
    K = witness_ideal(reg2)
    first = rr_closure(K, 1).closure
    again = rr_closure(first, 1).closure
    assert local_equal(first, again)


def test_closed_check_witness(reg2):
    K = witness_ideal(reg2)
    assert rr_closed_check(K, 2) == [False, True]


def test_closed_check_maximal_ideal(reg2):
    assert rr_closed_check(reg2.maximal_ideal(), 2) == [True, True]


def test_flag_contradiction(reg2):
    K = ideal(
        reg2, ["x^4", "x^3*y", "x*y^3", "y^4"],
        flags=IdealFlags(integrally_closed=True),
    )
    with pytest.raises(FlagContradiction):
        rr_closed_check(K, 1)


def test_tail_agreement(reg2):
    # closure(K^n) = K^n for all n from some point through the window
    K = witness_ideal(reg2)
    closed = rr_closed_check(K, 4)
    assert closed[-1] and closed[-2]


def test_monotonicity_reduction_pair(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    result = rr_monotonicity_check(I, J, 4)
    assert result["holds"]


def test_monotonicity_witness_pair(reg2):
    # the closures coincide at every power (K^1 closes up to the full layer)
    K = witness_ideal(reg2)
    J4 = ideal_power(reg2.maximal_ideal(), 4)
    result = rr_monotonicity_check(K, J4, 3)
    assert result["holds"]
    assert result["strict_at"] == ()


def test_series_identity_pair(reg2):
    m = reg2.maximal_ideal()
    bundle = rr_series(m, m)
    assert bundle.r_tilde == ()
    assert bundle.fits


def test_series_staircase(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    bundle = rr_series(I, J)
    assert bundle.r_tilde == (1,)
    assert bundle.fits and bundle.nonnegative


def test_series_negative_transfer(reg2):
    # the closure filtration of the witness pair has a non-CM transfer poly
    K = witness_ideal(reg2)
    J4 = ideal_power(reg2.maximal_ideal(), 4)
    bundle = rr_series(K, J4)
    assert bundle.r_tilde == (1, -2, 1)
    assert bundle.fits
    assert not bundle.nonnegative
    assert bundle.w_table[0] == 1 and set(bundle.w_table[1:]) == {0}


def test_series_coefficients_agree(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    bundle = rr_series(I, J)
    assert bundle.e_tilde == (4, 1, 0)


def test_closure_length_never_larger(reg2):
    K = witness_ideal(reg2)
    for n in (1, 2, 3):
        closure = rr_closure(K, n).closure
        assert require_finite(closure).length <= require_finite(
            ideal_power(K, n)
        ).length
