import pytest

from relcoeff import (
    LinkPropertyFailed,
    NotAReduction,
    NotContained,
    ValidationError,
    explore_asymptotic,
    hm_sums,
    ideal,
    ideal_power,
    is_reduction,
    link_ideal,
    local_equal,
    local_length,
    minimal_reduction,
    sequence_from_elements,
    superficial_sequence,
    vv_depth_probe,
)


def test_identity_is_reduction(reg2):
    m = reg2.maximal_ideal()
    cert = is_reduction(m, m)
    assert cert.is_reduction and cert.reduction_number == 0


def test_staircase_reduction_number(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    cert = is_reduction(I, J)
    assert cert.is_reduction and cert.reduction_number == 1


def test_not_contained_raises(reg2):
    with pytest.raises(NotContained):
        is_reduction(reg2.maximal_ideal(), ideal_power(reg2.maximal_ideal(), 2))


def test_not_a_reduction(reg2):
    I = ideal(reg2, ["x^3", "y^3"])
    J = ideal_power(reg2.maximal_ideal(), 2)
    cert = is_reduction(I, J)
    assert not cert.is_reduction
    assert "cap" in cert.note


def test_superficial_sequence_regular(reg2):
    seq = superficial_sequence(reg2.maximal_ideal(), 2, seed=1)
    assert len(seq.elements) == 2
    assert seq.window_verified


def test_superficial_sequence_deterministic(reg2):
    a = superficial_sequence(reg2.maximal_ideal(), 2, seed=9)
    b = superficial_sequence(reg2.maximal_ideal(), 2, seed=9)
    assert [p.terms for p in a.elements] == [p.terms for p in b.elements]


def test_minimal_reduction_square(reg2):
    J = ideal_power(reg2.maximal_ideal(), 2)
    q, seq, cert = minimal_reduction(J, seed=5)
    assert len(q.generators) == 2
    assert cert.is_reduction
    assert local_length(q).value == 4  # = e0


def test_minimal_reduction_regular_maximal(reg2):
    m = reg2.maximal_ideal()
    q, seq, cert = minimal_reduction(m, seed=5)
    assert local_length(q).value == 1
    assert cert.reduction_number == 0 or local_equal(q, m)


def test_minimal_reduction_deterministic(reg2):
    J = ideal_power(reg2.maximal_ideal(), 2)
    q1, _, _ = minimal_reduction(J, seed=5)
    q2, _, _ = minimal_reduction(J, seed=5)
    assert [g.terms for g in q1.generators] == [g.terms for g in q2.generators]


def test_vv_probe_regular_ring(reg2):
    m = reg2.maximal_ideal()
    _, seq, _ = minimal_reduction(m, seed=2)
    probe = vv_depth_probe(m, 2, seq)
    assert probe.verdict == "CERTIFIED_CM"


def test_vv_probe_partial_depth_is_window_only(reg2):
    m = reg2.maximal_ideal()
    _, seq, _ = minimal_reduction(m, seed=2)
    probe = vv_depth_probe(m, 1, seq, n_cap=4)
    assert probe.verdict == "PASS_WINDOW"


def test_vv_fail_witness_recheckable(ring_cm_essential):
    I = ideal(ring_cm_essential, ["X", "Y", "U", "W"])
    q, seq, cert = sequence_from_elements(I, ["X", "Y", "W"])
    probe = vv_depth_probe(I, 3, seq)
    assert probe.verdict == "FAIL"
    detail = probe.details[f"n={probe.witness}"]
    assert detail["intersection"] != detail["product"]


def test_hm_sums_parameter_ideal(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    sums = hm_sums(I, I)
    assert sums.s_lower == 0 and sums.s_upper == 0 and sums.e1 == 0
    assert "cm_consistent" in sums.verdicts


def test_hm_sums_requires_parameter_count(reg2):
    J = ideal_power(reg2.maximal_ideal(), 2)
    with pytest.raises(NotAReduction):
        hm_sums(J, J)  # 3 generators in dimension 2


def test_link_ideal_cusp(cusp):
    q = ideal(cusp, ["x"])
    m = cusp.maximal_ideal()
    I = link_ideal(q, m)
    assert local_equal(I, m)
    assert "minimal multiplicity" in I.note


def test_link_requires_gorenstein_flag(reg3):
    with pytest.raises(ValidationError):
        link_ideal(ideal(reg3, ["x", "y", "z"]), reg3.maximal_ideal())


def test_link_degenerate_regular(reg2):
    flagged = ideal(reg2, ["x", "y"])
    ring = flagged.ring
    ring.gorenstein = True
    try:
        I = link_ideal(flagged, reg2.maximal_ideal())
        assert I.note and "whole ring" in I.note
    finally:
        ring.gorenstein = False


def test_link_square_parameter(reg2):
    reg2.gorenstein = True
    try:
        q = ideal(reg2, ["x^2", "y^2"])
        I = link_ideal(q, reg2.maximal_ideal())
        assert local_equal(I, ideal_power(reg2.maximal_ideal(), 2))
    finally:
        reg2.gorenstein = False


def test_explore_veronese(reg2):
    J = ideal_power(reg2.maximal_ideal(), 2)
    report = explore_asymptotic(J, n_range=(1, 3), seed=4)
    assert report.first_certified == 1
    assert all(s.certified for s in report.steps)


def test_explore_regular_maximal(reg2):
    report = explore_asymptotic(reg2.maximal_ideal(), n_range=(1, 2), seed=4)
    assert report.first_certified == 1


def test_reduction_transitivity(reg2):
    # q below I below J with q a reduction of J forces I to be one too
    J = ideal_power(reg2.maximal_ideal(), 2)
    q, _, _ = minimal_reduction(J, seed=5)
    I = ideal(reg2, [g for g in q.generators] + ["x*y"])
    assert is_reduction(I, J).is_reduction
