import pytest

from relcoeff import (
    INFINITE,
    CapExceeded,
    Config,
    ValidationError,
    ideal,
    ideal_colon,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    local_contains,
    local_equal,
    local_length,
    quotient_length,
    RingPresentation,
)
from relcoeff.ring import colon_length, intersection_length, require_finite

import staircase_oracle as oracle


def test_relation_constant_term_rejected():
    with pytest.raises(ValidationError):
        RingPresentation(["x"], ["x + 1"], 1)


def test_power_of_square_layer(reg2):
    m = reg2.maximal_ideal()
    m2 = ideal_power(m, 2)
    assert m2.layer == ((0, 1), 2)
    assert sorted(g.terms[0][0] for g in m2.generators) == [(0, 2), (1, 1), (2, 0)]


def test_power_of_parameter_ideal(reg2):
    I = ideal(reg2, ["x^2", "y^2"])
    I2 = ideal_power(I, 2)
    got = sorted(g.terms[0][0] for g in I2.generators)
    assert got == [(0, 4), (2, 2), (4, 0)]


def test_power_interreduction_bound(ring_northcott):
    I = ideal(ring_northcott, ["X", "Y", "W"])
    I2 = ideal_power(I, 2)
    assert len(I2.generators) <= 6


def test_local_length_basics(reg2):
    assert local_length(ideal(reg2, ["x^2", "y^2"])).value == 4
    assert local_length(ideal(reg2, ["x"])).value is INFINITE


def test_local_length_is_local(reg2):
    # unit multiples and off-origin components do not change the local value
    assert local_length(ideal(reg2, ["x^2 + x^3", "y"])).value == 2
    ll = local_length(ideal(reg2, ["x - x^2", "y"]))
    assert ll.value == 1
    assert ll.stabilized_at > 0  # needed the truncation path


def test_local_length_cap_idempotent(reg2):
    K = ideal(reg2, ["x - x^2", "y"])
    base = local_length(K, Config())
    doubled = local_length(K, Config(length_cap=128))
    assert base.value == doubled.value


def test_local_length_cap_exceeded(reg2):
    with pytest.raises(CapExceeded):
        require_finite(ideal(reg2, ["x"]))


def test_local_contains(reg2):
    K = ideal(reg2, ["x^2", "y"])
    assert local_contains(K, "x^2 + x^3")
    assert not local_contains(K, "x")


def test_local_contains_truncation_path(reg2):
    K = ideal(reg2, ["x - x^2", "y"])  # locally (x, y)
    assert local_contains(K, "x")
    assert local_contains(K, "y")
    assert not local_contains(K, "1")


def test_local_equal(reg2):
    assert local_equal(ideal(reg2, ["x", "x + y"]), ideal(reg2, ["x", "y"]))
    assert local_equal(ideal(reg2, ["x^2"]), ideal(reg2, ["x^2 + x^3"]))
    assert not local_equal(ideal(reg2, ["x^2"]), ideal(reg2, ["x"]))


def test_ideal_colon_examples(reg2):
    c = ideal_colon(ideal(reg2, ["x^2"]), ideal(reg2, ["x"]))
    assert local_equal(c, ideal(reg2, ["x"]))


def test_colon_by_zero_flagged(reg2):
    c = ideal_colon(ideal(reg2, ["x^2"]), ideal(reg2, []))
    assert c.note and "zero" in c.note
    assert local_contains(c, "1")


def test_ideal_intersect_examples(reg2):
    inter = ideal_intersect(ideal(reg2, ["x"]), ideal(reg2, ["y"]))
    assert local_equal(inter, ideal(reg2, ["x*y"]))
    inter2 = ideal_intersect(ideal(reg2, ["x^2", "y"]), ideal(reg2, ["x"]))
    assert local_equal(inter2, ideal(reg2, ["x^2", "x*y"]))


def test_length_additivity_monotone(reg2):
    K = ideal(reg2, ["x^3", "y^3"])
    L = ideal(reg2, ["x^2", "y^2"])  # K inside L
    lk = local_length(K).value
    ll = local_length(L).value
    assert lk >= ll
    assert quotient_length(K, L) == lk - ll


def test_intersection_length_inclusion_exclusion(reg2):
    # against the lattice oracle on monomial ideals
    K = ideal(reg2, ["x^3", "y^2"])
    L = ideal(reg2, ["x", "y^4"])
    got = intersection_length(K, L)
    expect = oracle.colength(oracle.intersect([(3, 0), (0, 2)], [(1, 0), (0, 4)]))
    assert got == expect


def test_colon_kernel_matches_pinned_colon(reg2):
    # the kernel shortcut and the elimination route agree
    K = ideal(reg2, ["x^4", "x^3*y", "x*y^3", "y^4"])
    K2 = ideal_power(K, 2)
    via_kernel = colon_length(K2, list(K.generators))
    pinned = ideal_colon(K2, K)
    assert via_kernel == require_finite(pinned).length


def test_colon_oracle_monomial(reg2):
    K = ideal(reg2, ["x^4", "x^3*y", "x*y^3", "y^4"])
    c = ideal_colon(K, ideal(reg2, ["x*y"]))
    expect = oracle.colon([(4, 0), (3, 1), (1, 3), (0, 4)], (1, 1))
    assert require_finite(c).length == oracle.colength(expect)


def test_quotient_ring_lengths(cusp):
    m = cusp.maximal_ideal()
    values = [local_length(ideal_power(m, n)).value for n in range(1, 5)]
    assert values == [1, 3, 5, 7]


def test_sum_and_product(reg2):
    I = ideal(reg2, ["x^2"])
    J = ideal(reg2, ["y^2"])
    assert local_length(ideal_sum(I, J)).value == 4
    prod = ideal_product(I, J)
    assert local_equal(prod, ideal(reg2, ["x^2*y^2"]))
