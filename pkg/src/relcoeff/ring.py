"""Ideal arithmetic in a presented local ring.

The ring is A = Q[x1..xn]/a localized at the origin; relations must vanish
at the origin so the localization makes sense.  All lengths are vector
space dimensions over Q.

The paper-facing localization trick: a + K + m^N is a global ideal whose
colength stabilizes (in N) to the local colength of K, with stabilization
certified by Nakayama once two schedule steps agree.  As a fast path, when
a + K is already supported only at the origin (every variable nilpotent
modulo it) the global colength *is* the local length and no truncation is
needed; the truncation schedule remains for everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .config import DEFAULT
from .errors import (
    ArityMismatch,
    CapExceeded,
    ValidationError,
)
from .groebner import (
    INFINITE,
    PowerCap,
    _minimalize_monos,
    groebner,
    intersect_ideals,
)
from .poly import (
    DEGREVLEX,
    Polynomial,
    format_polynomial,
    mono_deg,
    parse_polynomial,
)


class RingPresentation:
    """A = (Q[variables]/relations) localized at the maximal ideal at 0."""

    def __init__(self, variables, relations, dim, label="A", gorenstein=False,
                 internal=False):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValidationError("duplicate variable names")
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = parse_polynomial(r, self.variables)
            if r.arity != self.arity:
                raise ArityMismatch("relation arity mismatch")
            if r.is_zero():
                continue
            if r.constant_term() != 0:
                raise ValidationError(
                    f"relation {format_polynomial(r, self.variables)!r} has a "
                    "nonzero constant term, so the origin is not on its locus"
                )
            rels.append(r)
        self.relations = tuple(rels)
        if dim < 0:
            raise ValidationError("dim must be non-negative")
        self.dim = dim
        self.label = label
        self.gorenstein = gorenstein
        self.internal = internal
        self._relations_gb = None
        self._local_cache = {}
        self._power_cache = {}
        self._product_cache = {}
        self._series_cache = {}
        self.dim_state = "skipped" if internal else "unchecked"

    @property
    def arity(self):
        return len(self.variables)

    def relations_gb(self):
        if self._relations_gb is None:
            self._relations_gb = groebner(self.relations, arity=self.arity)
        return self._relations_gb

    def reduce(self, f):
        """Normal form modulo the relation ideal."""
        if not self.relations:
            return f
        return self.relations_gb().normal_form(f)

    def parse(self, text):
        return parse_polynomial(text, self.variables)

    def show(self, f):
        return format_polynomial(f, self.variables)

    def maximal_ideal(self):
        return ideal(self, [Polynomial.variable(i, self.arity)
                            for i in range(self.arity)])

    def quotient_by(self, polys, suffix="quot"):
        """A/(polys) as a new presented ring with dim lowered accordingly."""
        return RingPresentation(
            self.variables,
            list(self.relations) + list(polys),
            max(self.dim - len(polys), 0),
            label=f"{self.label}/{suffix}",
            gorenstein=False,
            internal=True,
        )

    def __repr__(self):
        return f"RingPresentation({self.label!r}, dim={self.dim})"


@dataclass(frozen=True)
class IdealFlags:
    integrally_closed: bool = False
    asymptotically_normal: bool = False


class IdealHandle:
    """A finitely generated ideal of A, interpreted in the localization.

    `layer` marks the special case "all monomials of degree L in a subset
    of the variables" (powers of variable-generated ideals); the Groebner
    layer compression keys off it.  Flags are user assertions, never
    computed.
    """

    __slots__ = ("ring", "flags", "layer", "power_of", "note", "_gens")

    def __init__(self, ring, generators, flags=None, layer=None, power_of=None,
                 note=None):
        self.ring = ring
        self.flags = flags or IdealFlags()
        self.layer = layer
        self.power_of = power_of
        self.note = note
        if generators is None:
            self._gens = None  # materialized lazily from the layer
        else:
            self._gens = _canonicalize(ring, generators)

    @property
    def generators(self):
        if self._gens is None:
            idxs, deg = self.layer
            cap = PowerCap(idxs, deg)
            monos = cap.monomials(self.ring.arity)
            self._gens = _canonicalize(
                self.ring,
                [Polynomial.monomial(m, self.ring.arity) for m in monos],
            )
        return self._gens

    @property
    def fingerprint(self):
        if self.layer is not None:
            return ("layer",) + self.layer
        return tuple(g.terms for g in self.generators)

    def is_zero_ideal(self):
        return self.layer is None and not self.generators

    def show(self):
        return "(" + ", ".join(self.ring.show(g) for g in self.generators) + ")"

    def __repr__(self):
        if self.layer is not None:
            idxs, deg = self.layer
            names = ",".join(self.ring.variables[i] for i in idxs)
            return f"IdealHandle<({names})^{deg} of {self.ring.label}>"
        return f"IdealHandle<{self.show()} of {self.ring.label}>"


def _canonicalize(ring, generators):
    out = []
    seen = set()
    for g in generators:
        if isinstance(g, str):
            g = ring.parse(g)
        if g.arity != ring.arity:
            raise ArityMismatch("generator arity mismatch")
        g = ring.reduce(g).monic()
        if g.is_zero() or g.terms in seen:
            continue
        seen.add(g.terms)
        out.append(g)
    out.sort(key=lambda p: (DEGREVLEX.key(p.terms[0][0]), p.terms), reverse=True)
    return tuple(out)


def _detect_layer(ring, gens):
    """Recognize a complete monomial layer: all degree-L monomials in some
    variable subset.  Powers of such ideals stay layers."""
    if not gens:
        return None
    support = set()
    degree = None
    for g in gens:
        if len(g.terms) != 1 or g.terms[0][1] != 1:
            return None
        mono = g.terms[0][0]
        d = mono_deg(mono)
        if degree is None:
            degree = d
        elif degree != d:
            return None
        for i, e in enumerate(mono):
            if e:
                support.add(i)
    idxs = tuple(sorted(support))
    if not idxs:
        return None
    if len(gens) != comb(degree + len(idxs) - 1, len(idxs) - 1):
        return None
    return (idxs, degree)


def ideal(ring, generators, flags=None, note=None):
    gens = _canonicalize(ring, generators)
    layer = _detect_layer(ring, gens)
    h = IdealHandle(ring, None if layer else gens, flags=flags, layer=layer,
                    note=note)
    if layer:
        h._gens = gens
    return h


def unit_ideal(ring, note=None):
    return IdealHandle(ring, [Polynomial.constant(1, ring.arity)], note=note)


# ---------------------------------------------------------------------------
# localized data: Groebner basis certified to decide local membership


@dataclass
class LocalLength:
    value: object          # int or INFINITE
    stabilized_at: int     # truncation exponent used; 0 means none was needed

    @property
    def finite(self):
        return self.value is not INFINITE


class _Local:
    """Cached localization data for one ideal handle."""

    __slots__ = ("gb", "length", "n_used", "origin_ok", "_std", "_matcols")

    def __init__(self, gb, length, n_used, origin_ok):
        self.gb = gb
        self.length = length
        self.n_used = n_used
        self.origin_ok = origin_ok
        self._std = None
        self._matcols = {}

    @property
    def std_monomials(self):
        if self._std is None:
            self._std = self.gb.standard_monomials()
        return self._std

    def mult_columns(self, f):
        """Columns of multiplication-by-f on A/Q in the standard basis."""
        key = f.terms
        cols = self._matcols.get(key)
        if cols is not None:
            return cols
        basis = self.std_monomials
        pos = {m: i for i, m in enumerate(basis)}
        cols = []
        for b in basis:
            nf = self.gb.normal_form(f.shift(b))
            cols.append({pos[m]: c for m, c in nf.terms})
        self._matcols[key] = cols
        return cols


def _gen_polys(handle):
    if handle.layer is not None:
        return []
    return list(handle.generators)


def _caps(handle):
    if handle.layer is not None:
        return (PowerCap(*handle.layer),)
    return ()


_NILPOTENCY_TERM_GUARD = 400


def _all_nilpotent(gb, count, ring):
    """True when every variable is nilpotent modulo the ideal of gb."""
    for i in range(ring.arity):
        if any(i in cap.indices for cap in gb.caps):
            continue
        p = gb.normal_form(Polynomial.variable(i, ring.arity))
        exponent = 1
        while p and exponent < 2 * count + 2:
            if len(p.terms) > _NILPOTENCY_TERM_GUARD:
                return False
            p = gb.normal_form(p * p)
            exponent *= 2
        if p:
            return False
    return True


def localize(handle, config=DEFAULT):
    """Localization data for the handle, cached on the ring."""
    key = (handle.fingerprint, config.length_cap)
    hit = handle.ring._local_cache.get(key)
    if hit is not None:
        return hit
    ring = handle.ring
    gens = list(ring.relations) + _gen_polys(handle)
    caps = _caps(handle)
    gb = groebner(gens, caps=caps, arity=ring.arity)
    count = gb.standard_monomial_count()
    if count is not INFINITE and _all_nilpotent(gb, count, ring):
        data = _Local(gb, count, 0, True)
    else:
        if count is not INFINITE:
            # zero-dimensional but with points off the origin: restart the
            # truncated runs from the reduced basis (same ideal, small tails)
            gens = list(gb.generators)
        data = _truncation_schedule(handle, gens, caps, config)
    ring._local_cache[key] = data
    return data


def _truncation_schedule(handle, gens, caps, config):
    ring = handle.ring
    degs = [g.total_degree() for g in gens]
    if handle.layer is not None:
        degs.append(handle.layer[1])
    n0 = 2 * max(degs, default=1) + 2
    all_vars = tuple(range(ring.arity))
    prev_count = None
    prev = None
    n = n0
    while True:
        gb = groebner(gens, caps=caps + (PowerCap(all_vars, n),), arity=ring.arity)
        count = gb.standard_monomial_count()
        if count == prev_count:
            # two schedule steps agree, so K + m^(n-n0) = K + m^n and by
            # Nakayama m^(n-n0) lies in K locally: the count is the length
            return _Local(prev, count, n - n0, True)
        prev, prev_count = gb, count
        n += n0
        if n > config.length_cap:
            return _Local(prev, INFINITE, n - n0, False)


def local_length(handle, config=DEFAULT):
    """Length of A/K over the localization; INFINITE when K is not m-primary
    (or the truncation cap was hit first)."""
    data = localize(handle, config)
    return LocalLength(data.length, data.n_used)


def require_finite(handle, config=DEFAULT):
    data = localize(handle, config)
    if data.length is INFINITE:
        raise CapExceeded(data.n_used, None)
    return data


def _quick_local(handle, config):
    """Localization data via the origin-support fast path only; returns None
    rather than paying for the truncation schedule."""
    key = (handle.fingerprint, config.length_cap)
    hit = handle.ring._local_cache.get(key)
    if hit is not None:
        return hit if hit.origin_ok else None
    ring = handle.ring
    gens = list(ring.relations) + _gen_polys(handle)
    caps = _caps(handle)
    gb = groebner(gens, caps=caps, arity=ring.arity)
    count = gb.standard_monomial_count()
    if count is not INFINITE and _all_nilpotent(gb, count, ring):
        data = _Local(gb, count, 0, True)
        ring._local_cache[key] = data
        return data
    return None


def local_contains(handle, f, config=DEFAULT):
    """f in K A_m.  Decided by normal form against the localized basis when
    that basis is origin-certified; otherwise by the colon test
    1 in ((a + K) : f) + m, which is sound for any ideal."""
    ring = handle.ring
    if isinstance(f, str):
        f = ring.parse(f)
    f = ring.reduce(f)
    if f.is_zero():
        return True
    data = handle.ring._local_cache.get((handle.fingerprint, config.length_cap))
    if data is None:
        data = _quick_local(handle, config)
    if data is not None and data.origin_ok:
        return data.gb.normal_form(f).is_zero()
    colon = _single_colon(ring, list(ring.relations) + _materialized(handle), f)
    return any(g.constant_term() != 0 for g in colon)


def _materialized(handle):
    return list(handle.generators)


def local_equal(K, L, config=DEFAULT):
    """Equality of K A_m and L A_m."""
    dk = localize(K, config)
    dl = localize(L, config)
    if dk.length is not INFINITE and dl.length is not INFINITE:
        if dk.length != dl.length:
            return False
        return all(local_contains(L, g, config) for g in K.generators)
    return all(local_contains(L, g, config) for g in K.generators) and all(
        local_contains(K, g, config) for g in L.generators
    )


def quotient_length(inner, outer, config=DEFAULT):
    """lambda(outer/inner) for nested ideals inner <= outer (locally)."""
    li = require_finite(inner, config).length
    lo = require_finite(outer, config).length
    diff = li - lo
    if diff < 0:
        raise ValidationError("lengths violate the claimed containment")
    return diff


# ---------------------------------------------------------------------------
# ideal arithmetic


def ideal_sum(K, L):
    _same_ring(K, L)
    return ideal(K.ring, list(K.generators) + list(L.generators))


def ideal_product(K, L):
    _same_ring(K, L)
    cache = K.ring._product_cache
    key = (K.fingerprint, L.fingerprint)
    hit = cache.get(key)
    if hit is not None:
        return hit
    gens = []
    for f in K.generators:
        for g in L.generators:
            gens.append(f * g)
    result = ideal(K.ring, _prune_monomials(K.ring, gens))
    cache[key] = result
    cache[(L.fingerprint, K.fingerprint)] = result
    return result


def _prune_monomials(ring, gens):
    """Light interreduction: drop duplicates, zero, and monomials divisible
    by another monomial generator."""
    reduced = []
    seen = set()
    for g in gens:
        g = ring.reduce(g).monic()
        if g.is_zero() or g.terms in seen:
            continue
        seen.add(g.terms)
        reduced.append(g)
    monos = [g.terms[0][0] for g in reduced if len(g.terms) == 1]
    keep = set(_minimalize_monos(monos))
    out = []
    for g in reduced:
        if len(g.terms) == 1 and g.terms[0][0] not in keep:
            continue
        out.append(g)
    return out


def ideal_power(K, n):
    """K^n with per-step interreduction; layers of variable powers stay
    compressed."""
    if n < 1:
        raise ValidationError("ideal_power requires n >= 1")
    if n == 1:
        return K
    cache = K.ring._power_cache
    key = (K.fingerprint, n)
    hit = cache.get(key)
    if hit is not None:
        return hit
    base, mult = (K.power_of if K.power_of else (K, 1))
    if K.layer is not None:
        idxs, deg = K.layer
        result = IdealHandle(K.ring, None, layer=(idxs, deg * n),
                             power_of=(base, mult * n))
    else:
        half = ideal_power(K, n // 2) if n // 2 >= 1 else None
        if n % 2 == 0:
            result = ideal_product(half, half)
        else:
            result = ideal_product(ideal_product(half, half), K) if half else K
        result = IdealHandle(K.ring, result.generators,
                             layer=result.layer, power_of=(base, mult * n))
    cache[key] = result
    return result


def ideal_colon(K, L, config=DEFAULT):
    """(K :_A L), computed in the ambient polynomial ring as
    ((a + K) : L) via single-generator colons intersected over the
    generators of L.  Colon commutes with localization."""
    _same_ring(K, L)
    ring = K.ring
    lgens = [g for g in L.generators]
    if not lgens:
        return unit_ideal(ring, note="colon by the zero ideal")
    q_gens = list(ring.relations) + _materialized(K)
    result_gens = None
    for f in lgens:
        colon_f = _single_colon(ring, q_gens, f)
        if result_gens is None:
            result_gens = colon_f
        else:
            result_gens = intersect_ideals(result_gens, colon_f, ring.arity)
    return ideal(ring, result_gens)


def _single_colon(ring, q_gens, f):
    """(Q : f) = (1/f)(Q ∩ (f)) in the polynomial ring."""
    inter = intersect_ideals(q_gens, [f], ring.arity)
    return [g.exact_div(f) for g in inter]


def ideal_intersect(K, L):
    """K ∩ L via the auxiliary-variable elimination trick."""
    _same_ring(K, L)
    ring = K.ring
    a = list(ring.relations)
    gens = intersect_ideals(a + _materialized(K), a + _materialized(L), ring.arity)
    return ideal(ring, gens)


def _same_ring(K, L):
    if K.ring is not L.ring:
        raise ValidationError("ideals live in different rings")


def sum_length(K, L, config=DEFAULT):
    return require_finite(ideal_sum(K, L), config).length


def intersection_length(K, L, config=DEFAULT):
    """lambda(A/(K ∩ L)) by inclusion-exclusion on colengths."""
    lk = require_finite(K, config).length
    ll = require_finite(L, config).length
    ls = sum_length(K, L, config)
    return lk + ll - ls


# ---------------------------------------------------------------------------
# kernel-based colon data (internal; cross-checked against ideal_colon)


def _nullspace(vectors):
    """Combos (sparse dicts over input indices) spanning the kernel of the
    map sending input i to vectors[i]."""
    pivots = {}
    kernel = []
    for i, v in enumerate(vectors):
        vec = dict(v)
        combo = {i: Fraction(1)}
        while vec:
            r = max(vec)
            if r not in pivots:
                pivots[r] = (vec, combo)
                break
            pcol, pcombo = pivots[r]
            factor = vec[r] / pcol[r]
            _sub_scaled(vec, pcol, factor)
            _sub_scaled(combo, pcombo, factor)
        else:
            kernel.append(combo)
    return kernel


def _sub_scaled(target, source, factor):
    for k, c in source.items():
        val = target.get(k, 0) - factor * c
        if val:
            target[k] = val
        elif k in target:
            del target[k]


def colon_kernel(big, divisors, config=DEFAULT):
    """(Q : (divisors))/Q as vectors over the standard basis of A/Q.

    `big` is an m-primary handle (Q = its localized ideal).  Returns
    (kernel_vectors, basis_monomials); the colon ideal itself is Q plus the
    lifts of the kernel vectors.
    """
    local = require_finite(big, config)
    basis = local.std_monomials
    space = None
    for f in divisors:
        f = big.ring.reduce(f)
        if f.is_zero():
            continue
        cols = local.mult_columns(f)
        if space is None:
            space = [{i: c for i, c in combo.items()}
                     for combo in _nullspace(cols)]
        else:
            imgs = []
            for vec in space:
                img = {}
                for i, c in vec.items():
                    for j, cc in cols[i].items():
                        val = img.get(j, 0) + c * cc
                        if val:
                            img[j] = val
                        elif j in img:
                            del img[j]
                imgs.append(img)
            combos = _nullspace(imgs)
            space = [_combine(space, combo) for combo in combos]
        if not space:
            break
    if space is None:
        space = [{i: Fraction(1)} for i in range(len(basis))]
    return space, basis


def _combine(space, combo):
    out = {}
    for idx, c in combo.items():
        for k, cc in space[idx].items():
            val = out.get(k, 0) + c * cc
            if val:
                out[k] = val
            elif k in out:
                del out[k]
    return out


def lift_kernel(ring, vectors, basis):
    """Kernel vectors as polynomials over the standard-monomial basis."""
    out = []
    for vec in vectors:
        terms = [(basis[i], c) for i, c in sorted(vec.items())]
        out.append(Polynomial(terms, ring.arity))
    return out


def colon_length(big, divisors, config=DEFAULT):
    """lambda(A/(Q : (divisors))) = lambda(A/Q) - dim kernel."""
    local = require_finite(big, config)
    vectors, _ = colon_kernel(big, divisors, config)
    return local.length - len(vectors)
