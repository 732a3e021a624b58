import pytest

from relcoeff import (
    IdealFlags,
    ideal,
    ideal_power,
    verify,
    verify_ic_bound,
    verify_itoh,
    verify_narita,
    verify_northcott,
)
from relcoeff.verify import (
    ASSERTED,
    EQUALITY_CASE_VERIFIED,
    HOLDS,
    HYPOTHESIS_NOT_MET,
    MACHINE,
    NOT_APPLICABLE,
)


def test_northcott_staircase_equality(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    rep = verify_northcott(I, J, seed=1)
    assert rep.verdict == EQUALITY_CASE_VERIFIED
    assert rep.quantities["c"][0] == rep.quantities["lambda_J_over_I"] == 1


def test_northcott_identity(reg2):
    m = reg2.maximal_ideal()
    rep = verify_northcott(m, m, seed=1)
    assert rep.verdict == EQUALITY_CASE_VERIFIED
    assert rep.quantities["c"] == [0, 0]


def test_northcott_veronese_cube_is_equality(reg2):
    # (x^3, y^3) against m^3: c1 = 3 = lambda(J/I), another equality case
    I = ideal(reg2, ["x^3", "y^3"])
    J = ideal_power(reg2.maximal_ideal(), 3)
    rep = verify_northcott(I, J, seed=1)
    assert rep.verdict == EQUALITY_CASE_VERIFIED
    assert rep.quantities["c"][0] == rep.quantities["lambda_J_over_I"] == 3


def test_northcott_strict_inequality(ring_sally):
    # the sally ring pair has c1 = lambda(J/I) + 1, a strict inequality
    I = ideal(ring_sally, ["X", "Y", "W"])
    m = ring_sally.maximal_ideal()
    rep = verify_northcott(I, m, seed=7)
    assert rep.verdict == HOLDS
    assert rep.quantities["c"][0] == rep.quantities["lambda_J_over_I"] + 1


def test_northcott_non_reduction_pair(reg2):
    I = ideal(reg2, ["x^3", "y^3"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    rep = verify_northcott(I, J, seed=1)
    assert rep.verdict == HYPOTHESIS_NOT_MET


def test_narita_staircase(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    rep = verify_narita(I, J, seed=2)
    assert rep.verdict == EQUALITY_CASE_VERIFIED
    assert rep.quantities["c"][1] == 0


def test_narita_dimension_guard(cusp):
    m = cusp.maximal_ideal()
    rep = verify_narita(m, m, seed=2)
    assert rep.verdict == HYPOTHESIS_NOT_MET


def test_narita_identity_degenerate(reg2):
    m = reg2.maximal_ideal()
    rep = verify_narita(m, m, seed=2)
    assert rep.verdict == EQUALITY_CASE_VERIFIED


def test_ic_bound_trigger_not_met(reg2):
    # staircase pair has c1 = lambda exactly, so the trigger is off by one
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal(
        reg2, ["x^2", "x*y", "y^2"], flags=IdealFlags(integrally_closed=True)
    )
    rep = verify_ic_bound(I, J, seed=1)
    assert rep.verdict == NOT_APPLICABLE


def test_ic_bound_flag_required(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    rep = verify_ic_bound(I, J, seed=1)
    assert rep.verdict == HYPOTHESIS_NOT_MET


def test_itoh_dimension_guard(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    rep = verify_itoh(I, I, seed=1)
    assert rep.verdict == HYPOTHESIS_NOT_MET


def test_itoh_flag_required(reg3):
    I = ideal(reg3, ["x^2", "y^2", "z^2"])
    J = ideal_power(reg3.maximal_ideal(), 2)
    rep = verify_itoh(I, J, seed=1)
    assert rep.verdict == HYPOTHESIS_NOT_MET


def test_hypothesis_provenance_labels(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal(
        reg2, ["x^2", "x*y", "y^2"], flags=IdealFlags(integrally_closed=True)
    )
    rep = verify_ic_bound(I, J, seed=1)
    statuses = {h.name: h.status for h in rep.hypotheses}
    assert statuses["J integrally closed"] == ASSERTED
    assert statuses["I is a reduction of J"] == MACHINE


def test_verify_dispatch_unknown(reg2):
    m = reg2.maximal_ideal()
    with pytest.raises(ValueError):
        verify("nonexistent", m, m)


def test_report_json_shape(reg2):
    m = reg2.maximal_ideal()
    rep = verify_northcott(m, m, seed=1)
    d = rep.to_dict()
    assert set(d) == {"theorem", "hypotheses", "quantities", "verdict", "notes"}
    assert all(set(h) == {"name", "status", "detail"} for h in d["hypotheses"])
