"""Exact multivariate polynomial arithmetic over the rationals.

Monomials are plain tuples of non-negative integer exponents whose length
is the arity of the ambient ring.  Coefficients are `fractions.Fraction`
values, which the stdlib keeps reduced to lowest terms with a positive
denominator.  A polynomial stores its terms sorted in descending monomial
order, so the leading term is always index 0.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ArityMismatch, PolySyntaxError, UnknownVariable, ZeroPolynomial

_ZERO = Fraction(0)
_ONE = Fraction(1)
_MINUS_ONE = Fraction(-1)

# ---------------------------------------------------------------------------
# monomial helpers (raw exponent tuples)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    """b / a, assuming a | b."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


def mono_one(arity):
    return (0,) * arity


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A total, multiplicative, global order on exponent tuples.

    kind is one of "degrevlex", "lex", or "block"; a block order compares
    the first `block` variables degrevlex-first, which makes it an
    elimination order for those variables.
    """

    __slots__ = ("kind", "block")

    def __init__(self, kind, block=0):
        if kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.block = block

    def key(self, mono):
        """Sort key: key(a) < key(b) iff a < b in this order."""
        if self.kind == "degrevlex":
            return _drl_key(mono)
        if self.kind == "lex":
            return mono
        k = self.block
        return (_drl_key(mono[:k]), _drl_key(mono[k:]))

    @property
    def tag(self):
        return (self.kind, self.block)

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {self.block})"
        return f"MonomialOrder({self.kind!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


def _drl_key(mono):
    # degree first; ties broken by the smallest exponent in the rightmost
    # position where the monomials differ (hence reversed, negated).
    return (sum(mono), tuple(-e for e in reversed(mono)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_order(k):
    """Elimination order for the first k variables."""
    return MonomialOrder("block", k)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("terms", "arity", "order")

    def __init__(self, terms, arity, order=DEGREVLEX, _canonical=False):
        self.arity = arity
        self.order = order
        if _canonical:
            self.terms = terms
            return
        acc = {}
        for mono, coeff in terms:
            if len(mono) != arity:
                raise ArityMismatch(
                    f"monomial arity {len(mono)} != ring arity {arity}"
                )
            c = acc.get(mono, _ZERO) + Fraction(coeff)
            if c:
                acc[mono] = c
            elif mono in acc:
                del acc[mono]
        self.terms = tuple(
            sorted(acc.items(), key=lambda t: order.key(t[0]), reverse=True)
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity, order=DEGREVLEX):
        return cls((), arity, order, _canonical=True)

    @classmethod
    def constant(cls, value, arity, order=DEGREVLEX):
        value = Fraction(value)
        if not value:
            return cls.zero(arity, order)
        return cls(((mono_one(arity), value),), arity, order, _canonical=True)

    @classmethod
    def variable(cls, index, arity, order=DEGREVLEX):
        mono = tuple(1 if i == index else 0 for i in range(arity))
        return cls(((mono, _ONE),), arity, order, _canonical=True)

    @classmethod
    def monomial(cls, mono, arity, coeff=1, order=DEGREVLEX):
        coeff = Fraction(coeff)
        if not coeff:
            return cls.zero(arity, order)
        return cls(((tuple(mono), coeff),), arity, order, _canonical=True)

    # -- ring operations ----------------------------------------------------

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} != {other.arity}")

    def __add__(self, other):
        self._check(other)
        return Polynomial(
            _merge(self.terms, other.terms, _ONE, self.order),
            self.arity,
            self.order,
            _canonical=True,
        )

    def __sub__(self, other):
        self._check(other)
        return Polynomial(
            _merge(self.terms, other.terms, _MINUS_ONE, self.order),
            self.arity,
            self.order,
            _canonical=True,
        )

    def __neg__(self):
        return Polynomial(
            tuple((m, -c) for m, c in self.terms), self.arity, self.order, _canonical=True
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                c = acc.get(m, _ZERO) + c1 * c2
                if c:
                    acc[m] = c
                elif m in acc:
                    del acc[m]
        key = self.order.key
        return Polynomial(
            tuple(sorted(acc.items(), key=lambda t: key(t[0]), reverse=True)),
            self.arity,
            self.order,
            _canonical=True,
        )

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.arity, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.arity, self.order)
        return Polynomial(
            tuple((m, coeff * c) for m, coeff in self.terms),
            self.arity,
            self.order,
            _canonical=True,
        )

    def shift(self, mono, coeff=_ONE):
        """Multiply by coeff * x^mono."""
        return Polynomial(
            tuple((mono_mul(m, mono), c * coeff) for m, c in self.terms),
            self.arity,
            self.order,
            _canonical=True,
        )

    # -- inspection ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return self.terms[0]

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def constant_term(self):
        one = mono_one(self.arity)
        for m, c in self.terms:
            if m == one:
                return c
        return _ZERO

    def total_degree(self):
        if not self.terms:
            return -1
        return max(mono_deg(m) for m, _ in self.terms)

    def min_degree(self):
        if not self.terms:
            return -1
        return min(mono_deg(m) for m, _ in self.terms)

    def monic(self):
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == 1:
            return self
        return self.scale(1 / lc)

    def with_order(self, order):
        if order == self.order:
            return self
        return Polynomial(
            tuple(sorted(self.terms, key=lambda t: order.key(t[0]), reverse=True)),
            self.arity,
            order,
            _canonical=True,
        )

    def extend_arity(self, front=0, back=0):
        """Embed into a ring with extra variables prepended/appended."""
        pre = (0,) * front
        post = (0,) * back
        return Polynomial(
            tuple((pre + m + post, c) for m, c in self.terms),
            self.arity + front + back,
            DEGREVLEX,
        )

    def drop_front_vars(self, k):
        """Project to the last arity-k variables; first k exponents must be 0."""
        for m, _ in self.terms:
            if any(m[:k]):
                raise ArityMismatch("polynomial involves a dropped variable")
        return Polynomial(
            tuple((m[k:], c) for m, c in self.terms), self.arity - k, DEGREVLEX
        )

    def exact_div(self, g):
        """Divide by g, requiring zero remainder; used for colon lifting."""
        self._check(g)
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        quotient = []
        rest = self
        glt, glc = g.leading_term()
        while rest:
            m, c = rest.leading_term()
            if not mono_divides(glt, m):
                raise ArithmeticError("non-exact polynomial division")
            qm = mono_div(m, glt)
            qc = c / glc
            quotient.append((qm, qc))
            rest = rest - g.shift(qm, qc)
        return Polynomial(tuple(quotient), self.arity, self.order)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.arity != other.arity:
            return False
        if self.order == other.order:
            return self.terms == other.terms
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms)))

    def __repr__(self):
        names = tuple(f"x{i}" for i in range(self.arity))
        return f"Polynomial<{format_polynomial(self, names)}>"


def _merge(left, right, factor, order):
    """Merge two descending term tuples as left + factor*right."""
    out = []
    i = j = 0
    nl, nr = len(left), len(right)
    key = order.key
    while i < nl and j < nr:
        ml, cl = left[i]
        mr, cr = right[j]
        if ml == mr:
            c = cl + factor * cr
            if c:
                out.append((ml, c))
            i += 1
            j += 1
        elif key(ml) > key(mr):
            out.append((ml, cl))
            i += 1
        else:
            out.append((mr, factor * cr))
            j += 1
    out.extend(left[i:])
    for m, c in right[j:]:
        out.append((m, factor * c))
    return tuple(out)


# ---------------------------------------------------------------------------
# parsing and printing

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise PolySyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial expression grammar."""

    def __init__(self, text, variables, order):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = {name: i for i, name in enumerate(variables)}
        self.arity = len(variables)
        self.order = order

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return poly

    def expr(self):
        sign = 1
        while self.peek()[0] in "+-":
            if self.take()[0] == "-":
                sign = -sign
        poly = self.term().scale(sign)
        while self.peek()[0] in "+-":
            sign = 1
            while self.peek()[0] in "+-":
                if self.take()[0] == "-":
                    sign = -sign
            poly = poly + self.term().scale(sign)
        return poly

    def term(self):
        factors = []
        tok = self.peek()
        if tok[0] == "int":
            factors.append(Polynomial.constant(self.rational(), self.arity, self.order))
        else:
            factors.append(self.factor())
        while self.peek()[0] == "*":
            self.take()
            tok = self.peek()
            if tok[0] == "int":
                factors.append(
                    Polynomial.constant(self.rational(), self.arity, self.order)
                )
            else:
                factors.append(self.factor())
        poly = factors[0]
        for f in factors[1:]:
            poly = poly * f
        return poly

    def rational(self):
        num = int(self.take("int")[1])
        if self.peek()[0] == "/":
            self.take()
            den = int(self.take("int")[1])
            if den == 0:
                raise PolySyntaxError("zero denominator", self.peek()[2])
            return Fraction(num, den)
        return Fraction(num)

    def factor(self):
        tok = self.peek()
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.vars:
                raise UnknownVariable(tok[1], tok[2])
            base = Polynomial.variable(self.vars[tok[1]], self.arity, self.order)
        elif tok[0] == "(":
            self.take()
            base = self.expr()
            self.take(")")
        else:
            raise PolySyntaxError(f"expected a factor, found {tok[1]!r}", tok[2])
        if self.peek()[0] == "^":
            self.take()
            exp = int(self.take("int")[1])
            return base**exp
        return base


def parse_polynomial(text, variables, order=DEGREVLEX):
    """Parse polynomial text over the named variables.

    Grammar: sums of terms, explicit '*', '^' powers on variables and
    parenthesized subexpressions, integer or p/q rational coefficients.
    """
    return _Parser(text, variables, order).parse()


def format_polynomial(poly, variables):
    """Canonical text form; parsing it back reproduces the polynomial."""
    if not poly.terms:
        return "0"
    pieces = []
    for idx, (mono, coeff) in enumerate(poly.terms):
        neg = coeff < 0
        mag = -coeff if neg else coeff
        factors = []
        if mag != 1 or not any(mono):
            factors.append(
                str(mag.numerator)
                if mag.denominator == 1
                else f"{mag.numerator}/{mag.denominator}"
            )
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(variables[i])
            elif e > 1:
                factors.append(f"{variables[i]}^{e}")
        body = "*".join(factors)
        if idx == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)
