"""Buchberger's algorithm, normal forms, elimination, and staircase counting.

Two representation tricks keep desk-scale inputs fast without changing any
answer:

* S-pairs of two monomials are skipped outright (their S-polynomial is
  identically zero).
* An ideal summand consisting of *all* monomials of degree L in a subset S
  of the variables (e.g. a power of the maximal ideal) is carried as a
  `PowerCap` instead of as thousands of generators.  During division any
  term whose S-degree reaches L reduces to zero, and each basis polynomial
  contributes a finite band of "boundary" multiples that stand in for its
  S-pairs against the layer.  Tests cross-check capped runs against fully
  materialized ones.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
import threading
from math import comb

from .errors import ArityMismatch
from .poly import (
    DEGREVLEX,
    Polynomial,
    block_order,
    mono_coprime,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_one,
)


class PowerCap:
    """All monomials of degree `degree` in the variables `indices`."""

    __slots__ = ("indices", "degree")

    def __init__(self, indices, degree):
        self.indices = tuple(sorted(indices))
        self.degree = degree

    def sdeg(self, mono):
        return sum(mono[i] for i in self.indices)

    def kills(self, mono):
        return self.sdeg(mono) >= self.degree

    @property
    def tag(self):
        return (self.indices, self.degree)

    def monomials(self, arity):
        """Materialize the layer (for cross-checks and colon computations)."""
        out = []
        for combo in _compositions(self.degree, len(self.indices)):
            m = [0] * arity
            for i, e in zip(self.indices, combo):
                m[i] = e
            out.append(tuple(m))
        return out

    def count(self):
        return comb(self.degree + len(self.indices) - 1, len(self.indices) - 1)

    def __repr__(self):
        return f"PowerCap(vars={self.indices}, degree={self.degree})"


def _compositions(total, parts):
    """All tuples of `parts` non-negative ints summing to `total` (lex)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _cap_dead(mono, caps):
    for cap in caps:
        if cap.kills(mono):
            return True
    return False


def _mask(mono):
    m = 0
    for i, e in enumerate(mono):
        if e:
            m |= 1 << i
    return m


class _Entry:
    __slots__ = ("poly", "terms", "lt", "mask", "deg", "is_mono")

    def __init__(self, poly):
        self.poly = poly
        self.terms = poly.terms
        self.lt = poly.terms[0][0]
        self.mask = _mask(self.lt)
        self.deg = mono_deg(self.lt)
        self.is_mono = len(poly.terms) == 1


class _DivisorIndex:
    """Leading-term lookup: exact hits by hash, proper divisors by degree."""

    def __init__(self):
        self.exact = {}
        self.buckets = {}
        self.degrees = []

    def add(self, entry, idx):
        self.exact[entry.lt] = idx
        bucket = self.buckets.get(entry.deg)
        if bucket is None:
            self.buckets[entry.deg] = [(entry.mask, entry.lt, idx)]
            bisect.insort(self.degrees, entry.deg)
        else:
            bucket.append((entry.mask, entry.lt, idx))

    def find(self, mono, deg, mask):
        hit = self.exact.get(mono)
        if hit is not None:
            return hit
        for d in self.degrees:
            if d >= deg:
                break
            for emask, lt, idx in self.buckets[d]:
                if emask & ~mask:
                    continue
                if mono_divides(lt, mono):
                    return idx
        return None

    def divisors(self, mono, deg, mask):
        for d in self.degrees:
            if d > deg:
                break
            for emask, lt, idx in self.buckets[d]:
                if emask & ~mask:
                    continue
                if mono_divides(lt, mono):
                    yield idx


def _truncate_terms(terms, caps):
    if not caps:
        return terms
    return tuple((m, c) for m, c in terms if not _cap_dead(m, caps))


def _reduce_terms(terms, entries, index, caps, order):
    """Full normal form of a descending term list against entries + caps."""
    key = order.key
    work = list(terms)
    out = []
    pos = 0
    while pos < len(work):
        m, c = work[pos]
        if caps and _cap_dead(m, caps):
            pos += 1
            continue
        idx = index.find(m, mono_deg(m), _mask(m))
        if idx is None:
            out.append((m, c))
            pos += 1
            continue
        g = entries[idx]
        shift = mono_div(m, g.lt)
        # subtract c * x^shift * g  (g is monic); leading terms cancel
        sub = [(mono_mul(tm, shift), tc * c) for tm, tc in g.terms]
        work = _merge_sub(work[pos:], sub, key)
        pos = 0
    return tuple(out)


def _merge_sub(work, sub, key):
    """work - sub for descending term lists; leading terms cancel."""
    out = []
    i = j = 0
    nw, ns = len(work), len(sub)
    while i < nw and j < ns:
        mw, cw = work[i]
        ms, cs = sub[j]
        if mw == ms:
            c = cw - cs
            if c:
                out.append((mw, c))
            i += 1
            j += 1
        elif key(mw) > key(ms):
            out.append((mw, cw))
            i += 1
        else:
            out.append((ms, -cs))
            j += 1
    out.extend(work[i:])
    for m, c in sub[j:]:
        out.append((m, -c))
    return out


class GroebnerBasis:
    """A reduced Groebner basis together with any power-cap summands.

    `generators` are monic, interreduced, sorted by descending leading
    term; the full ideal is (generators) + the cap layers.
    """

    __slots__ = ("generators", "order", "caps", "arity", "fingerprint",
                 "_entries", "_index", "_count")

    def __init__(self, generators, order, caps, arity, fingerprint):
        self.generators = tuple(generators)
        self.order = order
        self.caps = tuple(caps)
        self.arity = arity
        self.fingerprint = fingerprint
        self._entries = [_Entry(g) for g in self.generators]
        self._index = _DivisorIndex()
        for i, e in enumerate(self._entries):
            self._index.add(e, i)
        self._count = None

    def normal_form(self, f):
        """Unique remainder of f modulo this basis."""
        if f.arity != self.arity:
            raise ArityMismatch(f"arity {f.arity} != {self.arity}")
        f = f.with_order(self.order)
        terms = _reduce_terms(f.terms, self._entries, self._index, self.caps, self.order)
        return Polynomial(terms, self.arity, self.order, _canonical=True)

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self):
        return any(e.deg == 0 for e in self._entries)

    def leading_monomials(self):
        return tuple(e.lt for e in self._entries)

    def standard_monomial_count(self):
        """Number of monomials outside the leading-term ideal, or None."""
        if self._count is None:
            self._count = count_standard_monomials(
                self.leading_monomials(), self.caps, self.arity
            )
        return self._count

    def standard_monomials(self):
        """Sorted list of standard monomials (finite case only)."""
        out = []
        _enumerate_standard(
            _minimalize_monos(self.leading_monomials()), self.caps, self.arity, (), out
        )
        key = self.order.key
        out.sort(key=key)
        return out

    def __repr__(self):
        return (
            f"GroebnerBasis({len(self.generators)} gens, caps={list(self.caps)}, "
            f"order={self.order.kind})"
        )


INFINITE = "INFINITE"

_CACHE = {}
_CACHE_LOCK = threading.Lock()


def clear_cache():
    with _CACHE_LOCK:
        _CACHE.clear()


def _canonical_gens(gens, order):
    seen = set()
    out = []
    for g in gens:
        if g.is_zero():
            continue
        g = g.with_order(order).monic()
        if g.terms in seen:
            continue
        seen.add(g.terms)
        out.append(g)
    out.sort(key=lambda p: (order.key(p.terms[0][0]), len(p.terms), p.terms))
    return out


def groebner(gens, order=DEGREVLEX, caps=(), arity=None):
    """Reduced Groebner basis of (gens) + cap layers, memoized.

    The cache is the only shared mutable state in the engine; it is guarded
    by a lock, and duplicated concurrent computation is harmless because the
    result is deterministic.
    """
    gens = list(gens)
    if arity is None:
        if not gens:
            raise ValueError("arity required for empty generator list")
        arity = gens[0].arity
    canon = _canonical_gens(gens, order)
    cap_tags = tuple(sorted(c.tag for c in caps))
    key = (tuple(p.terms for p in canon), cap_tags, order.tag, arity)
    with _CACHE_LOCK:
        found = _CACHE.get(key)
    if found is not None:
        return found
    basis = _buchberger(canon, order, tuple(caps), arity, key)
    with _CACHE_LOCK:
        _CACHE[key] = basis
    return basis


def _buchberger(gens, order, caps, arity, fingerprint):
    key = order.key
    entries = []
    index = _DivisorIndex()
    pair_heap = []
    treated = set()
    band_queue = []

    def insert(terms):
        """Normal-form terms; if nonzero, add as a new monic basis element."""
        terms = _reduce_terms(terms, entries, index, caps, order)
        if not terms:
            return None
        lc = terms[0][1]
        if lc != 1:
            terms = tuple((m, c / lc) for m, c in terms)
        poly = Polynomial(terms, arity, order, _canonical=True)
        entry = _Entry(poly)
        new_idx = len(entries)
        entries.append(entry)
        index.add(entry, new_idx)
        # queue pairs (skip monomial-monomial: S-polynomial is identically 0)
        for other_idx, other in enumerate(entries[:-1]):
            pair = (other_idx, new_idx)
            if entry.is_mono and other.is_mono:
                treated.add(pair)
                continue
            if mono_coprime(entry.lt, other.lt):
                treated.add(pair)  # Buchberger's first criterion
                continue
            lcm = mono_lcm(entry.lt, other.lt)
            heapq.heappush(pair_heap, (key(lcm), pair, lcm))
        # queue boundary multiples standing in for pairs against cap layers
        if not entry.is_mono:
            for cap in caps:
                _queue_bands(entry, cap, band_queue)
        return entry

    def _queue_bands(entry, cap, queue):
        lt_sdeg = cap.sdeg(entry.lt)
        tail_sdegs = [cap.sdeg(m) for m, _ in entry.terms[1:]]
        if not tail_sdegs:
            return
        min_tail = min(tail_sdegs)
        if min_tail >= lt_sdeg:
            return
        lo = max(0, cap.degree - lt_sdeg)
        hi = cap.degree - 1 - min_tail
        for wdeg in range(lo, hi + 1):
            for combo in _compositions(wdeg, len(cap.indices)):
                w = [0] * arity
                for i, e in zip(cap.indices, combo):
                    w[i] = e
                queue.append((entry, tuple(w)))

    for g in gens:
        insert(_truncate_terms(g.terms, caps))
        if entries and entries[-1].deg == 0:
            break  # unit ideal; nothing else matters

    while band_queue or pair_heap:
        if band_queue:
            entry, w = band_queue.pop(0)
            shifted = tuple((mono_mul(m, w), c) for m, c in entry.terms)
            insert(_truncate_terms(shifted, caps))
            continue
        _, (i, j), lcm = heapq.heappop(pair_heap)
        if (i, j) in treated:
            continue
        # Buchberger's chain criterion
        skip = False
        for k in index.divisors(lcm, mono_deg(lcm), _mask(lcm)):
            if k == i or k == j:
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik in treated and pjk in treated:
                skip = True
                break
        treated.add((i, j))
        if skip:
            continue
        fi, fj = entries[i], entries[j]
        si = mono_div(lcm, fi.lt)
        sj = mono_div(lcm, fj.lt)
        left = [(mono_mul(m, si), c) for m, c in fi.terms]
        right = [(mono_mul(m, sj), c) for m, c in fj.terms]
        spoly = _merge_sub(left, right, key)
        insert(_truncate_terms(tuple(spoly), caps))

    # reduce: drop entries whose leading term another divides, then tail-reduce
    kept = []
    for idx, e in enumerate(entries):
        redundant = False
        for d in sorted(index.buckets):
            if d > e.deg:
                break
            for emask, lt, other in index.buckets[d]:
                if other == idx:
                    continue
                if emask & ~e.mask:
                    continue
                if mono_divides(lt, e.lt) and (d < e.deg or lt == e.lt):
                    redundant = True
                    break
            if redundant:
                break
        if not redundant:
            kept.append(e)

    final_entries = []
    final_index = _DivisorIndex()
    for e in kept:
        final_index.add(e, len(final_entries))
        final_entries.append(e)
    reduced = []
    for pos, e in enumerate(final_entries):
        head = e.terms[:1]
        tail = e.terms[1:]
        # reduce the tail against all final elements (the head is irreducible)
        tail_nf = _reduce_terms(tail, final_entries, final_index, caps, order)
        reduced.append(
            Polynomial(head + tail_nf, arity, order, _canonical=True)
        )
    reduced.sort(key=lambda p: key(p.terms[0][0]), reverse=True)
    # tail reduction can change tails referenced by later reductions only if
    # leading terms overlapped, which minimalization already excludes
    return GroebnerBasis(reduced, order, caps, arity, fingerprint)


def buchberger(gens, order=DEGREVLEX, arity=None):
    """Public entry point matching the classical signature (no caps)."""
    return groebner(gens, order=order, caps=(), arity=arity)


def normal_form(f, gb):
    return gb.normal_form(f)


# ---------------------------------------------------------------------------
# standard monomial counting


def _minimalize_monos(monos):
    ordered = sorted(set(monos), key=lambda m: (mono_deg(m), m))
    kept = []
    for m in ordered:
        if not any(mono_divides(k, m) for k in kept):
            kept.append(m)
    return tuple(kept)


_COUNT_CACHE = {}


def count_standard_monomials(lt_monos, caps=(), arity=None):
    """Monomials divisible by no leading term and killed by no cap.

    Returns an int, or the INFINITE marker when some variable has no pure
    power in the leading-term ideal (and no cap bounds it).
    """
    if arity is None:
        arity = len(lt_monos[0]) if lt_monos else 0
    lts = _minimalize_monos(lt_monos)
    cap_tags = tuple(sorted(c.tag for c in caps))
    if any(mono_deg(m) == 0 for m in lts):
        return 0  # unit ideal
    if not _all_vars_bounded(lts, caps, arity):
        return INFINITE
    return _count(lts, cap_tags, arity)


def _all_vars_bounded(lts, caps, arity):
    for v in range(arity):
        bounded = any(
            m[v] and all(e == 0 for i, e in enumerate(m) if i != v) for m in lts
        )
        if not bounded:
            bounded = any(v in c.indices for c in caps)
        if not bounded:
            return False
    return True


def _count(lts, cap_tags, arity):
    """Recursive slice count over the last variable; memoized."""
    if any(mono_deg(m) == 0 for m in lts):
        return 0
    if any(deg <= 0 for _, deg in cap_tags):
        return 0
    if arity == 0:
        return 1
    key = (lts, cap_tags, arity)
    hit = _COUNT_CACHE.get(key)
    if hit is not None:
        return hit
    v = arity - 1
    bound = None
    for m in lts:
        if m[v] and all(e == 0 for i, e in enumerate(m) if i != v):
            bound = m[v] if bound is None else min(bound, m[v])
    for idxs, deg in cap_tags:
        if v in idxs:
            bound = deg if bound is None else min(bound, deg)
    total = 0
    for e in range(bound):
        slts = _minimalize_monos(tuple(m[:v] for m in lts if m[v] <= e))
        scaps = []
        dead = False
        for idxs, deg in cap_tags:
            if v in idxs:
                rest = tuple(i for i in idxs if i != v)
                ndeg = deg - e
                if ndeg <= 0:
                    dead = True
                    break
                if rest:
                    scaps.append((rest, ndeg))
                # a cap on {v} alone becomes vacuous once v is fixed below it
            else:
                scaps.append((idxs, deg))
        if dead:
            continue
        total += _count(slts, tuple(sorted(scaps)), v)
    _COUNT_CACHE[key] = total
    return total


def _enumerate_standard(lts, caps, arity, suffix, out):
    """Collect standard monomials; mirrors _count but materializes tuples."""
    if any(mono_deg(m) == 0 for m in lts):
        return
    if any(c.degree <= 0 for c in caps):
        return
    if arity == 0:
        out.append(suffix)
        return
    v = arity - 1
    bound = None
    for m in lts:
        if m[v] and all(x == 0 for i, x in enumerate(m) if i != v):
            bound = m[v] if bound is None else min(bound, m[v])
    for c in caps:
        if v in c.indices:
            bound = c.degree if bound is None else min(bound, c.degree)
    if bound is None:
        raise ArithmeticError("unbounded variable while enumerating staircase")
    for e in range(bound):
        slts = _minimalize_monos(tuple(m[:v] for m in lts if m[v] <= e))
        scaps = []
        dead = False
        for c in caps:
            if v in c.indices:
                rest = tuple(i for i in c.indices if i != v)
                ndeg = c.degree - e
                if ndeg <= 0:
                    dead = True
                    break
                if rest:
                    scaps.append(PowerCap(rest, ndeg))
            else:
                scaps.append(c)
        if dead:
            continue
        _enumerate_standard(slts, tuple(scaps), v, (e,) + suffix, out)


# ---------------------------------------------------------------------------
# elimination


def eliminate(gens, k, arity=None):
    """Generators of (gens) intersected with the subring skipping the
    first k variables, returned in the smaller ring."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    if arity is None:
        arity = gens[0].arity
    if arity <= k:
        raise ArityMismatch("cannot eliminate every variable")
    gb = groebner(gens, order=block_order(k), arity=arity)
    out = []
    for g in gb.generators:
        if all(all(e == 0 for e in m[:k]) for m, _ in g.terms):
            out.append(g.drop_front_vars(k))
    return out


def intersect_ideals(gens_a, gens_b, arity):
    """(A) ∩ (B) by the auxiliary-variable trick: eliminate t from
    t*A + (1-t)*B."""
    t = Polynomial.variable(0, arity + 1)
    one = Polynomial.constant(1, arity + 1)
    extended = []
    for g in gens_a:
        extended.append(t * g.extend_arity(front=1))
    for g in gens_b:
        extended.append((one - t) * g.extend_arity(front=1))
    if not extended:
        return []
    return eliminate(extended, 1, arity + 1)


def certify(gb, max_pairs=None, rng=None):
    """Buchberger certificate: every S-polynomial (including the boundary
    multiples standing in for cap pairs) must reduce to zero.

    Returns (ok, number_of_checks).  For very large bases the pair list may
    be sampled deterministically via max_pairs + rng.
    """
    gens = gb.generators
    checks = 0
    pairs = list(itertools.combinations(range(len(gens)), 2))
    if max_pairs is not None and len(pairs) > max_pairs:
        rng.shuffle(pairs)
        pairs = pairs[:max_pairs]
    for i, j in pairs:
        fi, fj = gens[i], gens[j]
        if fi.is_monomial() and fj.is_monomial():
            continue
        lti = fi.leading_monomial()
        ltj = fj.leading_monomial()
        lcm = mono_lcm(lti, ltj)
        s = fi.shift(mono_div(lcm, lti)) - fj.shift(mono_div(lcm, ltj))
        if not gb.normal_form(s).is_zero():
            return False, checks
        checks += 1
    for g in gens:
        if g.is_monomial():
            continue
        for cap in gb.caps:
            lt_sdeg = cap.sdeg(g.leading_monomial())
            tail_sdegs = [cap.sdeg(m) for m, _ in g.terms[1:]]
            if not tail_sdegs or min(tail_sdegs) >= lt_sdeg:
                continue
            lo = max(0, cap.degree - lt_sdeg)
            hi = cap.degree - 1 - min(tail_sdegs)
            for wdeg in range(lo, hi + 1):
                for combo in _compositions(wdeg, len(cap.indices)):
                    w = [0] * gb.arity
                    for idx, e in zip(cap.indices, combo):
                        w[idx] = e
                    if not gb.normal_form(g.shift(tuple(w))).is_zero():
                        return False, checks
                    checks += 1
    return True, checks
