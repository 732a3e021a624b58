"""Hilbert-Samuel tables, series reconstruction, and relative coefficients.

The series of the associated graded ring is sum lambda(K^n/K^(n+1)) z^n =
h(z)/(1-z)^d; the coefficients e_i are read off h via e_i = sum_j h_j C(j,i),
which is h^(i)(1)/i! evaluated without any division.  For a reduction pair
I <= J the transfer polynomial r is the exact quotient (h^J - h^I)/(z - 1),
and c_i = e_i^J - e_i^I = r^(i-1)(1)/(i-1)!.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .config import DEFAULT
from .errors import (
    DimensionMismatch,
    E0Mismatch,
    NonPolynomialWindow,
    NotAReduction,
    ValidationError,
)
from .ring import ideal_power, require_finite


@dataclass
class FiltrationTable:
    ideal: object
    values: tuple            # lambda(A/K^(n+1)) for n = 0..n_max
    first_differences: tuple  # a_n = lambda(K^n/K^(n+1))

    @property
    def n_max(self):
        return len(self.values) - 1


@dataclass
class HilbertSeries:
    numerator: tuple        # integer h-vector h_0..h_s
    denominator_exponent: int
    postulation: int

    def h_at_one(self):
        return sum(self.numerator)

    def display(self, var="t"):
        if not self.numerator:
            body = "0"
        else:
            parts = []
            for j, c in enumerate(self.numerator):
                if c == 0:
                    continue
                mag = abs(c)
                if j == 0:
                    piece = str(mag)
                else:
                    piece = var if j == 1 else f"{var}^{j}"
                    if mag != 1:
                        piece = f"{mag}{piece}"
                if not parts:
                    parts.append(piece if c > 0 else f"-{piece}")
                else:
                    parts.append(f"+ {piece}" if c > 0 else f"- {piece}")
            body = " ".join(parts) if parts else "0"
        return f"({body})/(1-{var})^{self.denominator_exponent}"

    def coefficient_of_filtration(self, n):
        """a_n implied by the series: [z^n] h(z)/(1-z)^d."""
        d = self.denominator_exponent
        return sum(
            h * comb(n - j + d - 1, d - 1)
            for j, h in enumerate(self.numerator)
            if n - j >= 0
        )


@dataclass
class CoefficientVector:
    e: tuple  # e_0..e_d

    def hilbert_polynomial_value(self, n):
        d = len(self.e) - 1
        return sum(
            (-1) ** i * self.e[i] * comb(n + d - i, d - i)
            for i in range(d + 1)
        )


@dataclass
class RelativeCoefficients:
    c: tuple        # c_1..c_d
    r: tuple        # transfer polynomial coefficients r_0..r_s
    e_inner: CoefficientVector
    e_outer: CoefficientVector


def hs_table(K, n_max, config=DEFAULT):
    """Exact lengths lambda(A/K^(n+1)) for n = 0..n_max."""
    values = []
    for n in range(n_max + 1):
        values.append(require_finite(ideal_power(K, n + 1), config).length)
    diffs = [values[0]]
    for n in range(1, len(values)):
        diffs.append(values[n] - values[n - 1])
    if any(d < 0 for d in diffs):
        raise ValidationError("Hilbert-Samuel values are not increasing")
    return FiltrationTable(K, tuple(values), tuple(diffs))


def series_reconstruct(table, d, window=None, config=DEFAULT):
    """Recover h(z) from the filtration table, requiring `window` trailing
    zero coefficients of (1-z)^d * sum a_n z^n as evidence the tail is real."""
    if window is None:
        window = config.window
    a = table.first_differences
    coeffs = []
    for n in range(len(a)):
        c = sum((-1) ** k * comb(d, k) * a[n - k] for k in range(min(n, d) + 1))
        coeffs.append(c)
    if len(coeffs) < window + 1 or any(c != 0 for c in coeffs[-window:]):
        raise NonPolynomialWindow(
            f"no zero tail of length {window} within n_max={table.n_max}; "
            "raise n_max"
        )
    last = 0
    for j, c in enumerate(coeffs):
        if c != 0:
            last = j
    numerator = tuple(coeffs[: last + 1])
    if sum(numerator) <= 0:
        raise DimensionMismatch(
            f"series numerator sums to {sum(numerator)}; the asserted "
            f"dimension {d} is too large"
        )
    series = HilbertSeries(tuple(numerator), d, 0)
    # prediction check: h reproduces every computed table entry
    for n in range(len(a)):
        if series.coefficient_of_filtration(n) != a[n]:
            raise ValidationError("series fails to reproduce the table")
    series.postulation = _postulation(table, series)
    return series


def _postulation(table, series):
    e = coefficients(series, validate_ring=None)
    post = 0
    for n in range(table.n_max + 1):
        if e.hilbert_polynomial_value(n) != table.values[n]:
            post = n + 1
    return post


def coefficients(series, validate_ring=None, config=DEFAULT):
    """e_i = h^(i)(1)/i! for i = 0..d, with the divisibility of the
    derivative by i! asserted as a corruption check."""
    if validate_ring is not None:
        validate_dimension(validate_ring, config)
    d = series.denominator_exponent
    h = series.numerator
    e = []
    for i in range(d + 1):
        deriv = sum(c * _falling(j, i) for j, c in enumerate(h))
        if deriv % factorial(i) != 0:
            raise ValidationError("derivative not divisible by i!")
        e.append(deriv // factorial(i))
    if e[0] < 1:
        raise DimensionMismatch("multiplicity e_0 must be positive")
    return CoefficientVector(tuple(e))


def _falling(j, i):
    out = 1
    for t in range(i):
        out *= j - t
    return out


def series(K, config=DEFAULT, rn_hint=None, validate=True):
    """Length table + reconstruction with automatic n_max growth, cached."""
    cache = K.ring._series_cache
    key = K.fingerprint
    hit = cache.get(key)
    if hit is not None:
        return hit
    if validate:
        validate_dimension(K.ring, config)
    d = K.ring.dim
    n_max = config.nmax
    if rn_hint is not None:
        # a known reduction number bounds deg h, so r + d + window entries
        # guarantee the zero tail is genuine
        n_max = min(max(n_max, rn_hint + d + config.window), config.nmax_limit)
    while True:
        table = hs_table(K, n_max, config)
        try:
            result = series_reconstruct(table, d, config=config)
            break
        except NonPolynomialWindow:
            if n_max >= config.nmax_limit:
                raise
            n_max = min(n_max * 2, config.nmax_limit)
    cache[key] = (table, result)
    return cache[key]


def validate_dimension(ring, config=DEFAULT):
    """The degree of the Hilbert-Samuel polynomial of m must equal the
    asserted dimension; checked once per ring, lazily."""
    if ring.dim_state in ("ok", "skipped", "checking"):
        return
    ring.dim_state = "checking"
    try:
        m = ring.maximal_ideal()
        table, hs = series(m, config, validate=False)
        coeffs = coefficients(hs)
        if coeffs.e[0] < 1:
            raise DimensionMismatch("asserted dimension too large")
    except NonPolynomialWindow as exc:
        ring.dim_state = "unchecked"
        raise DimensionMismatch(
            f"Hilbert function of m incompatible with asserted dim={ring.dim}: {exc}"
        ) from exc
    except DimensionMismatch:
        ring.dim_state = "unchecked"
        raise
    ring.dim_state = "ok"


def relative_coefficients(I, J, config=DEFAULT):
    """c_i(I, J) and the transfer polynomial r for a reduction pair."""
    from .reduction import is_reduction

    cert = is_reduction(I, J, config=config)
    if not cert.is_reduction:
        raise NotAReduction("relative coefficients need I to be a reduction of J")
    _, hs_i = series(I, config, rn_hint=cert.reduction_number)
    _, hs_j = series(J, config, rn_hint=cert.reduction_number)
    e_i = coefficients(hs_i, validate_ring=I.ring, config=config)
    e_j = coefficients(hs_j, validate_ring=J.ring, config=config)
    if e_i.e[0] != e_j.e[0]:
        raise E0Mismatch(
            f"e0 differs across a verified reduction pair: {e_i.e[0]} vs {e_j.e[0]}"
        )
    r = _divide_by_z_minus_1(_sub_poly(hs_j.numerator, hs_i.numerator))
    d = I.ring.dim
    c = tuple(
        sum(coeff * comb(j, i - 1) for j, coeff in enumerate(r))
        for i in range(1, d + 1)
    )
    for i in range(1, d + 1):
        if c[i - 1] != e_j.e[i] - e_i.e[i]:
            raise ValidationError(
                "transfer polynomial disagrees with coefficient differences"
            )
    return RelativeCoefficients(c, r, e_i, e_j)


def _sub_poly(a, b):
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    )


def _divide_by_z_minus_1(p):
    """Exact quotient p/(z-1); requires p(1) = 0."""
    if sum(p) != 0:
        raise E0Mismatch("difference of numerators does not vanish at 1")
    # p = (z-1) q  =>  p_k = q_{k-1} - q_k with q_s = p_{s+1} ... iterate from top
    q = [0] * (len(p) - 1) if len(p) > 1 else []
    acc = 0
    for k in range(len(p) - 1, 0, -1):
        acc += p[k]
        q[k - 1] = acc
    while q and q[-1] == 0:
        q.pop()
    return tuple(q)


def w_series_check(I, J, n_max, config=DEFAULT):
    """Directly computed lambda(J^(n+1)/I^(n+1)) against the expansion of
    r(z)/(1-z)^d; records the first mismatch if any."""
    rc = relative_coefficients(I, J, config)
    d = I.ring.dim
    observed = []
    for n in range(n_max + 1):
        li = require_finite(ideal_power(I, n + 1), config).length
        lj = require_finite(ideal_power(J, n + 1), config).length
        observed.append(li - lj)
    expected = [
        sum(coeff * comb(n - j + d - 1, d - 1) for j, coeff in enumerate(rc.r)
            if n - j >= 0)
        for n in range(n_max + 1)
    ]
    mismatch = None
    for n in range(n_max + 1):
        if observed[n] != expected[n]:
            mismatch = n
            break
    return {
        "observed": tuple(observed),
        "expected": tuple(expected),
        "first_mismatch": mismatch,
        "r": rc.r,
    }
