"""Ratliff-Rush closures of ideal powers and the closed-filtration series.

The closure of K^n is the union of the ascending colon chain
(K^(n+k) : K^k); the chain is computed through multiplication kernels on
the finite-dimensional quotients, and equality of consecutive steps is a
length comparison because the chain ascends.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .config import DEFAULT
from .errors import (
    ChainCapExceeded,
    FlagContradiction,
    NonPolynomialWindow,
    NotAReduction,
    PropertyViolation,
)
from .hilbert import (
    FiltrationTable,
    coefficients,
    relative_coefficients,
    series,
    series_reconstruct,
)
from .ring import (
    colon_kernel,
    ideal,
    ideal_power,
    lift_kernel,
    local_contains,
    local_equal,
    require_finite,
)


@dataclass
class RRClosureResult:
    closure: object          # IdealHandle
    stabilized_k: int
    new_generators: tuple


@dataclass
class RRSeriesBundle:
    r_tilde: tuple           # coefficients of the closed-filtration transfer poly
    e_tilde: tuple           # coefficient vector of the closed filtration
    w_table: tuple           # lambda(closure(J^(n+1))/I^(n+1))
    w_expected: tuple        # expansion of r_tilde/(1-z)^d
    fits: bool
    nonnegative: bool        # CM symptom: the transfer coefficients are >= 0
    h_tilde: tuple


def rr_closure(K, n=1, config=DEFAULT):
    """Ratliff-Rush closure of K^n via the colon chain (K^(n+k) : K^k)."""
    base = ideal_power(K, n) if n > 1 else K
    cache = K.ring._product_cache.setdefault("_rr", {})
    key = (K.fingerprint, n, config.chain_cap)
    hit = cache.get(key)
    if hit is not None:
        return hit
    prev_len = None
    prev_gens = None
    prev_k = 0
    for k in range(1, config.chain_cap + 1):
        big = ideal_power(K, n + k)
        divisors = list(ideal_power(K, k).generators)
        vectors, basis = colon_kernel(big, divisors, config)
        length = require_finite(big, config).length - len(vectors)
        if length == prev_len:
            lifted = prev_gens
            result = _build_closure(base, lifted, prev_k, config)
            cache[key] = result
            return result
        prev_len = length
        prev_gens = lift_kernel(K.ring, vectors, basis)
        prev_k = k
    raise ChainCapExceeded(
        f"Ratliff-Rush chain for {K!r}^{n} did not stabilize by k = "
        f"{config.chain_cap}"
    )


def _build_closure(base, lifted, k, config):
    closure = ideal(base.ring, list(base.generators) + list(lifted))
    new_gens = tuple(
        g for g in closure.generators if not local_contains(base, g, config)
    )
    if require_finite(closure, config).length > require_finite(base, config).length:
        raise PropertyViolation("closure smaller than the ideal; engine bug")
    return RRClosureResult(closure, k, new_gens)


def rr_closed_check(K, n_max, config=DEFAULT):
    """Per-power closedness closure(K^n) = K^n for n = 1..n_max.

    Raises FlagContradiction when the integrally_closed assertion on K is
    falsified at n = 1 (the closure lies inside the integral closure, so a
    strictly bigger closure disproves the flag)."""
    out = []
    for n in range(1, n_max + 1):
        res = rr_closure(K, n, config)
        closed = require_finite(res.closure, config).length == require_finite(
            ideal_power(K, n), config
        ).length
        out.append(closed)
    if K.flags.integrally_closed and out and not out[0]:
        raise FlagContradiction(
            "ideal flagged integrally_closed but its Ratliff-Rush closure is "
            "strictly larger"
        )
    return out


def rr_monotonicity_check(I, J, n_max, config=DEFAULT):
    """closure(I^n) lies in closure(J^n) for every n up to n_max; a failure
    is an engine bug because the inclusion is a theorem for reductions."""
    from .reduction import is_reduction

    cert = is_reduction(I, J, config=config)
    if not cert.is_reduction:
        raise NotAReduction("monotonicity check needs a reduction pair")
    witnesses = []
    for n in range(1, n_max + 1):
        ci = rr_closure(I, n, config).closure
        cj = rr_closure(J, n, config).closure
        for g in ci.generators:
            if not local_contains(cj, g, config):
                raise PropertyViolation(
                    f"closure inclusion failed at n={n}; engine bug"
                )
        if not local_equal(ci, cj, config):
            witnesses.append(n)
    return {"holds": True, "strict_at": tuple(witnesses), "n_max": n_max}


def rr_series(I, J, n_max=None, config=DEFAULT):
    """Series data of the closed filtration {closure(J^n)}: its transfer
    polynomial, its coefficient vector (must match J's), and the table of
    lambda(closure(J^(n+1))/I^(n+1)) cross-checked against the expansion."""
    from .reduction import is_reduction

    cert = is_reduction(I, J, config=config)
    if not cert.is_reduction:
        raise NotAReduction("rr_series needs a reduction pair")
    rc = relative_coefficients(I, J, config)
    d = I.ring.dim
    if n_max is None:
        _, hs_j = series(J, config, rn_hint=cert.reduction_number)
        n_max = len(hs_j.numerator) + config.window + 1
    while True:
        values = []
        for n in range(n_max + 1):
            closure = rr_closure(J, n + 1, config).closure
            values.append(require_finite(closure, config).length)
        diffs = [values[0]] + [values[i] - values[i - 1] for i in range(1, len(values))]
        table = FiltrationTable(J, tuple(values), tuple(diffs))
        try:
            h_tilde = series_reconstruct(table, d, config=config)
            break
        except NonPolynomialWindow:
            if n_max >= config.nmax_limit:
                raise
            n_max = min(n_max * 2, config.nmax_limit)
    _, hs_i = series(I, config, rn_hint=cert.reduction_number)
    from .hilbert import _divide_by_z_minus_1, _sub_poly

    r_tilde = _divide_by_z_minus_1(
        _sub_poly(h_tilde.numerator, hs_i.numerator)
    )
    e_tilde = coefficients(h_tilde, validate_ring=None, config=config).e
    e_j = rc.e_outer.e
    if tuple(e_tilde) != tuple(e_j):
        raise PropertyViolation(
            "closed filtration changed the Hilbert coefficients; engine bug"
        )
    w_table = []
    for n in range(n_max + 1):
        li = require_finite(ideal_power(I, n + 1), config).length
        closure = rr_closure(J, n + 1, config).closure
        w_table.append(li - require_finite(closure, config).length)
    w_expected = [
        sum(c * comb(n - j + d - 1, d - 1) for j, c in enumerate(r_tilde)
            if n - j >= 0)
        for n in range(n_max + 1)
    ]
    return RRSeriesBundle(
        r_tilde=tuple(r_tilde),
        e_tilde=tuple(e_tilde),
        w_table=tuple(w_table),
        w_expected=tuple(w_expected),
        fits=w_table == w_expected,
        nonnegative=all(c >= 0 for c in r_tilde),
        h_tilde=tuple(h_tilde.numerator),
    )
