"""Reductions, superficial sequences, depth diagnostics, and the explorer.

Reduction testing is operationalized as I*J^n = J^(n+1) for some n (then a
persistence window is re-verified).  Depth of the associated graded ring is
probed through the Valabrega-Valla equalities K^n ∩ q = q K^(n-1), which
need only length comparisons here: the right side is contained in the left,
and lambda(A/(K^n ∩ q)) = lambda(A/K^n) + lambda(A/q) - lambda(A/(K^n + q)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .config import DEFAULT
from .errors import (
    LinkPropertyFailed,
    NotAReduction,
    NotContained,
    ReductionCheckFailed,
    SuperficialSearchFailed,
    ValidationError,
)
from .groebner import INFINITE
from .hilbert import coefficients, series
from .ring import (
    colon_length,
    ideal,
    ideal_colon,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    local_contains,
    local_equal,
    localize,
    require_finite,
    unit_ideal,
)


@dataclass
class ReductionCertificate:
    is_reduction: bool
    reduction_number: object  # least r with I*J^r = J^(r+1), or None
    note: str = ""


@dataclass
class SuperficialSequence:
    elements: tuple          # polynomials in the ambient presentation
    seed: object
    window: tuple            # (n0, n1) checked for each element
    source: object = None    # the ideal the sequence was drawn for
    window_verified: bool = True


@dataclass
class DepthProbeResult:
    k: int
    verdict: str             # CERTIFIED_CM | PASS_WINDOW | FAIL
    checked_range: tuple
    witness: object = None   # failing exponent n, if any
    details: dict = field(default_factory=dict)


@dataclass
class HMSums:
    terms_lower: tuple
    terms_upper: tuple
    s_lower: int
    s_upper: int
    e1: int
    verdicts: tuple


def is_reduction(I, J, persist=None, config=DEFAULT):
    """Certificate that I is a reduction of J, searching the least r with
    I*J^r = J^(r+1) locally and re-verifying a persistence window."""
    if persist is None:
        persist = config.persist
    cache = I.ring._product_cache.setdefault("_red_certs", {})
    key = (I.fingerprint, J.fingerprint)
    hit = cache.get(key)
    if hit is not None:
        return hit
    for g in I.generators:
        if not local_contains(J, g, config):
            raise NotContained("I is not contained in J locally")
    cert = None
    for n in range(config.reduction_cap + 1):
        lhs = I if n == 0 else ideal_product(I, ideal_power(J, n))
        target = ideal_power(J, n + 1)
        if require_finite(lhs, config).length == require_finite(target, config).length:
            for t in range(1, persist + 1):
                lhs_t = ideal_product(I, ideal_power(J, n + t))
                tgt_t = ideal_power(J, n + t + 1)
                if require_finite(lhs_t, config).length != require_finite(
                    tgt_t, config
                ).length:
                    raise ValidationError(
                        "reduction equality failed to persist; engine bug"
                    )
            cert = ReductionCertificate(True, n)
            break
    if cert is None:
        cert = ReductionCertificate(
            False, None, note=f"no equality up to the cap {config.reduction_cap}"
        )
    cache[key] = cert
    return cert


# ---------------------------------------------------------------------------
# superficial elements


def _draw_element(rng, gens, bound, dense):
    """Random small-integer combination of the generators.

    Early rounds draw sparse combinations (they keep the auxiliary Groebner
    bases tame and often land on coordinate-like parameters); failures
    densify on retry."""
    n = len(gens)
    coeffs = [0] * n
    if dense and n <= 8:
        while not any(coeffs):
            coeffs = [rng.randint(-bound, bound) for _ in range(n)]
    else:
        width = rng.randint(1, max(2, n // 2)) if not dense else min(n, 6)
        slots = rng.sample(range(n), min(n, width))
        for s in slots:
            c = 0
            while c == 0:
                c = rng.randint(-bound, bound)
            coeffs[s] = c
    out = None
    for c, g in zip(coeffs, gens):
        if c:
            term = g.scale(c)
            out = term if out is None else out + term
    return out


def _superficial_window_ok(K, x, window, config):
    """(K^(n+1) : x) = K^n locally for n in the window, via lengths."""
    for n in range(window[0], window[1] + 1):
        big = ideal_power(K, n + 1)
        lhs = colon_length(big, [x], config)
        rhs = require_finite(ideal_power(K, n), config).length
        if lhs != rhs:
            return False
    return True


def superficial_sequence(K, count, seed=0, config=DEFAULT, rn_hint=None):
    """Draw and window-verify a superficial sequence of the given length.

    Elements are random combinations of K's ambient generators (so the
    sequence ideal lies inside K) with coefficients in [-B, B]; B starts at
    config.coeff_bound and doubles per retry round.  Element i is verified
    against the image of K in the ring quotiented by the earlier elements.
    """
    if count > K.ring.dim:
        raise ValidationError("sequence longer than the ring dimension")
    rng = random.Random(repr(seed))
    diagnostics = []
    bound = config.coeff_bound
    r0 = max(1, rn_hint) if rn_hint else 1
    window = (r0, r0 + config.window)
    for attempt in range(config.max_retries):
        elements = [
            _draw_element(rng, K.generators, bound, attempt > 1)
            for _ in range(count)
        ]
        if any(x is None or x.is_zero() for x in elements):
            bound *= 2
            continue
        seq = _verify_sequence(K, elements, r0, config)
        if seq is not None:
            return SuperficialSequence(tuple(elements), seed, window, source=K)
        diagnostics.append(f"attempt {attempt}: window verification failed")
        bound *= 2
    raise SuperficialSearchFailed(
        f"no superficial sequence of length {count} found in "
        f"{config.max_retries} rounds",
        diagnostics,
    )


def _expected_multiplicity(K, config):
    """e0(K); powers of a base ideal use the n^d scaling rule."""
    if K.power_of is not None:
        base, n = K.power_of
        _, hs = series(base, config)
        return coefficients(hs, validate_ring=base.ring, config=config).e[0] * (
            n ** K.ring.dim
        )
    _, hs = series(K, config)
    return coefficients(hs, validate_ring=K.ring, config=config).e[0]


def minimal_reduction(K, seed=0, config=DEFAULT):
    """A parameter ideal generated by a superficial sequence, with the
    multiplicity consistency check lambda(A/q) = e0(K).

    Returns (q_handle, sequence, certificate).  For K = J^n the powered
    sequence (y_i^n) of a minimal reduction (y_i) of J is tried first; by
    the multiplicity criterion it is a reduction, and every certificate is
    still machine-checked.
    """
    d = K.ring.dim
    if d == 0:
        q = ideal(K.ring, [])
        return q, SuperficialSequence((), seed, (0, 0), source=K), ReductionCertificate(True, 0)
    e0 = _expected_multiplicity(K, config)
    failures = []
    candidates = []
    if K.power_of is not None and K.power_of[1] > 1:
        base, n = K.power_of
        try:
            qb, seqb, _ = minimal_reduction(base, seed, config)
            candidates.append(tuple(y**n for y in seqb.elements))
        except (SuperficialSearchFailed, ReductionCheckFailed):
            pass
    if len(K.generators) <= 10:
        # deterministic generator subsets first: they are often parameter
        # systems already and keep coefficients small
        import itertools

        for combo in itertools.islice(
            itertools.combinations(K.generators, d), 30
        ):
            candidates.append(combo)
    total = config.max_retries * 4
    trials = [(c, False) for c in candidates]
    for attempt in range(total + 1):
        last_resort = attempt == total
        rng = random.Random(repr((seed, attempt)))
        bound = config.coeff_bound * (2 ** (attempt // max(config.max_retries, 1)))
        elements = []
        for _ in range(d):
            x = _draw_element(rng, K.generators, bound,
                              attempt % 4 == 3 or last_resort)
            if x is not None:
                elements.append(x)
        if len(elements) == d:
            trials.append((elements, last_resort))
    for elements, last_resort in trials:
        q = ideal(K.ring, elements)
        if len(q.generators) < d:
            failures.append("degenerate draw")
            continue
        # cheap pre-filter: only the final attempt pays for the truncation
        # schedule; rejecting an origin-contaminated draw just resamples
        if not last_resort and not _quick_origin_check(q, config):
            failures.append("draw failed the quick origin-support filter")
            continue
        if last_resort and require_finite_or_none(q, config) is None:
            failures.append("draw not m-primary")
            continue
        try:
            cert = is_reduction(q, K, config=config)
        except NotContained:
            failures.append("draw escaped the ideal")
            continue
        if not cert.is_reduction:
            failures.append("draw is not a reduction")
            continue
        if require_finite(q, config).length != e0:
            failures.append(
                f"lambda(A/q)={require_finite(q, config).length} != e0={e0}"
            )
            continue
        seq = _verify_sequence(K, elements, cert.reduction_number, config)
        if seq is None:
            failures.append("superficial window failed")
            continue
        return q, seq, cert
    raise SuperficialSearchFailed(
        f"minimal reduction of {K!r} not found", failures
    )


def require_finite_or_none(handle, config):
    data = localize(handle, config)
    return None if data.length is INFINITE else data


def _quick_origin_check(handle, config):
    """True when a + (handle) is visibly origin-supported, without running
    the truncation schedule.  Uses the fast-path localization probe only."""
    from .groebner import groebner
    from .ring import _all_nilpotent, _caps, _gen_polys

    ring = handle.ring
    gb = groebner(list(ring.relations) + _gen_polys(handle), caps=_caps(handle),
                  arity=ring.arity)
    count = gb.standard_monomial_count()
    return count is not INFINITE and _all_nilpotent(gb, count, ring)


def _verify_sequence(K, elements, rn, config):
    """Window-verify elements as a superficial sequence for K, checking
    element i against the image of K modulo the earlier elements."""
    current = K
    r0 = max(1, rn if rn is not None else 1)
    window = (r0, r0 + config.window)
    for pos, x in enumerate(elements):
        img = current.ring.reduce(x)
        if img.is_zero() or not _superficial_window_ok(current, img, window, config):
            return None
        if pos + 1 < len(elements):
            ring = current.ring.quotient_by([x], suffix=f"v{pos}")
            current = ideal(ring, [g for g in K.generators])
    return SuperficialSequence(tuple(elements), None, window, source=K)


def sequence_from_elements(K, elements, config=DEFAULT):
    """Wrap explicitly given elements (e.g. corpus parameter ideals) as a
    sequence usable by the depth probe.

    The reduction property is machine-checked; the superficiality window is
    attempted and recorded, but its failure only marks the sequence, since
    the CERTIFIED_CM direction of the probe is sound for any parameter
    reduction."""
    elems = [K.ring.parse(e) if isinstance(e, str) else e for e in elements]
    q = ideal(K.ring, elems)
    cert = is_reduction(q, K, config=config)
    if not cert.is_reduction:
        raise NotAReduction("given elements do not generate a reduction")
    seq = _verify_sequence(K, elems, cert.reduction_number, config)
    if seq is None:
        r0 = max(1, cert.reduction_number or 1)
        seq = SuperficialSequence(
            tuple(elems), None, (r0, r0 + config.window), source=K,
            window_verified=False,
        )
    return q, seq, cert


# ---------------------------------------------------------------------------
# Valabrega-Valla depth probe


def vv_depth_probe(K, k, seq, n_cap=None, config=DEFAULT):
    """Probe depth Gr_K >= k through K^n ∩ (x_1..x_k) = (x_1..x_k)K^(n-1).

    For k = d the exponents up to the reduction number + 1 certify
    Cohen-Macaulayness; for k < d the probe is window evidence only.
    """
    d = K.ring.dim
    if len(seq.elements) < k:
        raise ValidationError("sequence shorter than the probed depth")
    q = ideal(K.ring, seq.elements[:k])
    details = {}
    if k == d:
        cert = is_reduction(q, K, config=config)
        if not cert.is_reduction:
            raise NotAReduction("probe sequence does not generate a reduction")
        bound = cert.reduction_number + 1
        details["reduction_number"] = cert.reduction_number
        # q is m-primary here, so both sides have finite colength and the
        # intersection length comes from inclusion-exclusion
        lq = require_finite(q, config).length
        for n in range(1, bound + 1):
            kn = ideal_power(K, n)
            lkn = require_finite(kn, config).length
            lsum = require_finite(ideal_sum(kn, q), config).length
            lhs = lkn + lq - lsum  # lambda(A/(K^n ∩ q))
            rhs_ideal = q if n == 1 else ideal_product(q, ideal_power(K, n - 1))
            rhs = require_finite(rhs_ideal, config).length
            details[f"n={n}"] = {"intersection": lhs, "product": rhs}
            if lhs != rhs:
                return DepthProbeResult(k, "FAIL", (1, bound), witness=n,
                                        details=details)
        return DepthProbeResult(k, "CERTIFIED_CM", (1, bound), details=details)
    # k < d: the partial parameter ideal is not m-primary, so compare the
    # ideals themselves; the product side always sits inside the intersection
    bound = n_cap if n_cap is not None else config.nmax // 2
    for n in range(1, bound + 1):
        kn = ideal_power(K, n)
        inter = ideal_intersect(kn, q)
        rhs_ideal = q if n == 1 else ideal_product(q, ideal_power(K, n - 1))
        contained = all(
            local_contains(rhs_ideal, g, config) for g in inter.generators
        )
        details[f"n={n}"] = {"contained": contained}
        if not contained:
            return DepthProbeResult(k, "FAIL", (1, bound), witness=n,
                                    details=details)
    return DepthProbeResult(k, "PASS_WINDOW", (1, bound), details=details)


def cm_certificate(K, seed=0, config=DEFAULT):
    """Convenience: minimal reduction + full-depth probe for Gr_K."""
    q, seq, cert = minimal_reduction(K, seed, config)
    return vv_depth_probe(K, K.ring.dim, seq, config=config)


# ---------------------------------------------------------------------------
# Huckaba-Marley sums


def hm_sums(K, q, config=DEFAULT):
    """The two partial sums bounding e1, with the diagnostic labels the
    worked examples draw from them."""
    cert = is_reduction(q, K, config=config)
    if not cert.is_reduction:
        raise NotAReduction("q is not a reduction of K")
    if len(q.generators) != K.ring.dim:
        raise NotAReduction("q is not a parameter ideal (wrong generator count)")
    lq = require_finite(q, config).length
    terms_lower = []
    terms_upper = []
    n = 1
    while n <= 32:
        kn = ideal_power(K, n)
        lkn = require_finite(kn, config).length
        t_low = lq - require_finite(ideal_sum(kn, q), config).length
        prev = q if n == 1 else ideal_product(q, ideal_power(K, n - 1))
        t_up = require_finite(prev, config).length - lkn
        # each list shows its terms through the first vanishing one
        if not terms_lower or terms_lower[-1] != 0:
            terms_lower.append(t_low)
        if not terms_upper or terms_upper[-1] != 0:
            terms_upper.append(t_up)
        if t_up == 0:
            break
        n += 1
    s_lower = sum(terms_lower)
    s_upper = sum(terms_upper)
    _, hs = series(K, config, rn_hint=cert.reduction_number)
    e1 = coefficients(hs, validate_ring=K.ring, config=config).e[1]
    verdicts = []
    if e1 == s_lower:
        verdicts.append("cm_consistent")
    if e1 == s_upper:
        verdicts.append("depth_at_least_dim_minus_1_consistent")
    if e1 != s_lower:
        verdicts.append("not_cm_consistent")
    return HMSums(
        tuple(terms_lower), tuple(terms_upper), s_lower, s_upper, e1,
        tuple(verdicts),
    )


# ---------------------------------------------------------------------------
# link ideals (q : m) in Gorenstein presentations


def link_ideal(q, m, config=DEFAULT):
    """I = (q : m) for a parameter ideal q; verifies I^2 = qI, the minimal
    multiplicity property that makes these good corpus generators."""
    ring = q.ring
    if not ring.gorenstein:
        raise ValidationError("link ideals need the ring flagged gorenstein")
    if len(q.generators) != ring.dim:
        raise ValidationError("q must be a parameter ideal (d generators)")
    I = ideal_colon(q, m, config)
    if any(g.constant_term() != 0 for g in I.generators):
        return unit_ideal(ring, note="degenerate link: (q : m) is the whole ring")
    I2 = ideal_power(I, 2)
    qI = ideal_product(q, I)
    if not local_equal(I2, qI, config):
        raise LinkPropertyFailed(
            "I^2 != qI; the gorenstein metadata on this ring is wrong"
        )
    I.note = "minimal multiplicity certified: I^2 = qI"
    return I


# ---------------------------------------------------------------------------
# asymptotic explorer


@dataclass
class ExploreStep:
    n: int
    reduction_number: object
    probe: DepthProbeResult
    rr_closed: tuple
    certified: bool


@dataclass
class ExploreReport:
    steps: tuple
    first_certified: object
    persists: bool


def explore_asymptotic(J, n_range=None, seed=0, config=DEFAULT):
    """For each n in the range: build J^n, find a minimal reduction, probe
    full depth, and check Ratliff-Rush closedness of the first powers."""
    from .rr import rr_closed_check

    lo, hi = n_range if n_range else (config.explore_lo, config.explore_hi)
    steps = []
    for n in range(lo, hi + 1):
        K = ideal_power(J, n) if n > 1 else J
        q, seq, cert = minimal_reduction(K, (seed, n), config)
        probe = vv_depth_probe(K, K.ring.dim, seq, config=config)
        rrc = rr_closed_check(K, 2, config=config)
        steps.append(
            ExploreStep(
                n,
                cert.reduction_number,
                probe,
                tuple(rrc),
                probe.verdict == "CERTIFIED_CM",
            )
        )
    first = None
    for s in steps:
        if s.certified and all(t.certified for t in steps if t.n >= s.n):
            first = s.n
            break
    persists = first is not None and (steps[-1].n - first >= min(
        config.persist, steps[-1].n - lo))
    return ExploreReport(tuple(steps), first, persists)
