"""Exact arithmetic kernel: heights, univariate and dense multivariate
polynomials, truncated power series, and small ring helpers.

Integers are Python ints and rationals are ``fractions.Fraction``.  Heavy
univariate work over Q is delegated to python-flint through the ``to_qpoly``
and ``from_qpoly`` bridges.
"""
from fractions import Fraction
from math import gcd

import flint
import mpmath

_LOG_BITS = 34
_LOG_PREC = 160


# ---------------------------------------------------------------- ring helpers

def is_number(x):
    return isinstance(x, (int, Fraction, flint.fmpz, flint.fmpq))


def ring_one(x):
    """Multiplicative identity of the ring that ``x`` lives in."""
    if is_number(x):
        return 1
    if isinstance(x, flint.fmpq_poly):
        return flint.fmpq_poly([1])
    if isinstance(x, flint.fmpz_poly):
        return flint.fmpz_poly([1])
    return x.one()


def ring_zero(x):
    if is_number(x):
        return 0
    if isinstance(x, flint.fmpq_poly):
        return flint.fmpq_poly([])
    if isinstance(x, flint.fmpz_poly):
        return flint.fmpz_poly([])
    return x.zero()


def is_zero(x):
    if is_number(x):
        return x == 0
    return x.is_zero()


def to_flint_scalar(s):
    if isinstance(s, Fraction):
        if s.denominator == 1:
            return s.numerator
        return flint.fmpq(s.numerator, s.denominator)
    return s


def scale(s, x):
    """Scalar action of an integer or rational ``s`` on a ring element."""
    if isinstance(s, Fraction) and s.denominator == 1:
        s = s.numerator
    if isinstance(s, int) or is_number(x):
        return s * x
    if isinstance(x, (flint.fmpq_poly, flint.fmpz_poly)):
        return to_flint_scalar(s) * x
    return x.scale(s)


def ring_inverse(x):
    """Inverse of a unit; raises ZeroDivisionError on non-units."""
    if isinstance(x, int):
        return Fraction(1, x)
    if isinstance(x, Fraction):
        return 1 / x
    if isinstance(x, TruncSeries):
        return series_invert(x)
    return x.inverse()


def rsum(items, zero=None):
    """Sum of ring elements without assuming ``0 + x`` works."""
    acc = None
    for it in items:
        acc = it if acc is None else acc + it
    if acc is None:
        if zero is None:
            return 0
        return zero
    return acc


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(int(x))


# ---------------------------------------------------------------- heights

def _log2_approx(x):
    mpmath.mp.prec = _LOG_PREC
    return mpmath.log(mpmath.mpf(x.numerator) / x.denominator, 2)


def _exact_log2(x):
    """log2 of x when it is an integer power of two, else None."""
    num, den = x.numerator, x.denominator
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        return Fraction(num.bit_length() - den.bit_length())
    return None


def log2_upper(x):
    """Exact rational r >= log2(x), within 2^-32, for positive rational x."""
    x = as_fraction(x)
    if x <= 0:
        raise ValueError("log2 of a non-positive number")
    ex = _exact_log2(x)
    if ex is not None:
        return ex
    scaled = _log2_approx(x) * 2 ** _LOG_BITS
    return Fraction(int(mpmath.ceil(scaled)) + 1, 2 ** _LOG_BITS)


def log2_lower(x):
    """Exact rational r <= log2(x), within 2^-32, for positive rational x."""
    x = as_fraction(x)
    if x <= 0:
        raise ValueError("log2 of a non-positive number")
    ex = _exact_log2(x)
    if ex is not None:
        return ex
    scaled = _log2_approx(x) * 2 ** _LOG_BITS
    return Fraction(int(mpmath.floor(scaled)) - 1, 2 ** _LOG_BITS)


def _flat_coefficients(x):
    if isinstance(x, UniPoly):
        return list(x.coeffs)
    if isinstance(x, MPoly):
        return list(x.terms.values())
    if isinstance(x, (flint.fmpz_poly, flint.fmpq_poly)):
        return [as_fraction(c) for c in x.coeffs()]
    if isinstance(x, (list, tuple)):
        out = []
        for item in x:
            out.extend(_flat_coefficients(item))
        return out
    return [x]


def height(x):
    """Logarithmic height max{log2|c|, 1} over all components of ``x``.

    Accepts integers, rationals (numerator and denominator both count),
    nested sequences (vectors, matrices) and polynomials.  Zero counts as 1.
    """
    best = Fraction(1)
    for c in _flat_coefficients(x):
        c = as_fraction(c)
        for part in (abs(c.numerator), c.denominator):
            if part > 1:
                best = max(best, log2_upper(part))
    return best


def content_primitive(p):
    """Split an integer polynomial into (content, primitive part).

    The primitive part has positive leading coefficient, so
    ``content * primitive == p`` up to sign.
    """
    coeffs = p.coeffs if isinstance(p, UniPoly) else tuple(p)
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero has no content")
    c = 0
    for a in coeffs:
        c = gcd(c, a)
    if coeffs[-1] < 0:
        c = -c
    prim = UniPoly([a // c for a in coeffs])
    return abs(c), prim


def clear_denominators(coeffs):
    """Return (den, integer coefficients) with coeffs == ints / den."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return den, [int(c * den) for c in coeffs]


# ---------------------------------------------------------------- univariate

class UniPoly:
    """Dense univariate polynomial, coefficients low to high, over any ring."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def one(self):
        return UniPoly([ring_one(self.coeffs[0])] if self.coeffs else [1])

    def zero(self):
        return UniPoly()

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "UniPoly(%r)" % (list(self.coeffs),)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly([other]) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return UniPoly(out)

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs])

    def scale(self, s):
        return UniPoly([scale(s, c) for c in self.coeffs])

    def __pow__(self, k):
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation at any element of a ring acting on coefficients."""
        one = ring_one(x)
        if not self.coeffs:
            return ring_zero(one)
        acc = None
        for c in reversed(self.coeffs):
            c = scale(c, one) if is_number(c) else c
            acc = c if acc is None else acc * x + c
        return acc

    def derivative(self):
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        """Division with remainder over a field (coefficients invertible)."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [as_fraction(c) if is_number(c) else c for c in self.coeffs]
        d = other.degree()
        inv = 1 / as_fraction(other.lc()) if is_number(other.lc()) else ring_inverse(other.lc())
        quo = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - d - 1, -1, -1):
            c = rem[k + d] * inv
            quo[k] = c
            if is_zero(c):
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return UniPoly(quo), UniPoly(rem[:d])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero():
            return self
        inv = 1 / as_fraction(self.lc())
        return UniPoly([as_fraction(c) * inv for c in self.coeffs])


def to_qpoly(p):
    """Bridge to a flint rational polynomial."""
    coeffs = p.coeffs if isinstance(p, UniPoly) else p
    den, ints = clear_denominators([as_fraction(c) for c in coeffs])
    return flint.fmpq_poly(ints, den) if ints else flint.fmpq_poly([])


def from_qpoly(p):
    return UniPoly([as_fraction(c) for c in p.coeffs()])


def _prem_primitive(a, b):
    """Primitive part of the pseudo-remainder of integer polynomials."""
    r = list(a)
    d = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= d and r:
        lr = r[-1]
        shift = len(r) - 1 - d
        r = [x * lb for x in r]
        for j, c in enumerate(b):
            r[shift + j] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    if not r:
        return []
    g = 0
    for x in r:
        g = gcd(g, x)
    return [x // g for x in r]


def poly_gcd(a, b):
    """Monic gcd over Q via a primitive pseudo-remainder sequence."""
    a = UniPoly([as_fraction(c) for c in a])
    b = UniPoly([as_fraction(c) for c in b])
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    x = content_primitive(clear_denominators(a.coeffs)[1])[1].coeffs
    y = content_primitive(clear_denominators(b.coeffs)[1])[1].coeffs
    if len(x) < len(y):
        x, y = y, x
    x, y = list(x), list(y)
    while y:
        x, y = y, _prem_primitive(x, y)
    return UniPoly(x).monic()


# ---------------------------------------------------------------- multivariate

class MPoly:
    """Dense-coefficient multivariate polynomial over Q: exponent tuple -> coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def one(self):
        return MPoly.const(self.nvars, 1)

    def zero(self):
        return MPoly(self.nvars)

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "MPoly(%d, %r)" % (self.nvars, self.terms)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.const(self.nvars, other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    def __rmul__(self, other):
        return MPoly(self.nvars, {e: other * c for e, c in self.terms.items()})

    def scale(self, s):
        return self * s

    def __pow__(self, k):
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, point):
        """Evaluate at a point whose entries live in any ring with scalar action."""
        one = ring_one(point[0]) if point else 1
        acc = None
        for e, c in self.terms.items():
            t = scale(c, one)
            for x, k in zip(point, e):
                for _ in range(k):
                    t = t * x
            acc = t if acc is None else acc + t
        return ring_zero(one) if acc is None else acc

    def coefficient(self, e):
        return self.terms.get(tuple(e), 0)

    def homogeneous_part(self, k):
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return used


# ---------------------------------------------------------------- power series

class TruncSeries:
    """Power series in ``nvars`` variables, truncated above total degree ``cap``.

    Coefficients are exact rationals stored sparsely by exponent vector.
    ``center`` only records where the series is expanded; arithmetic ignores it.
    """

    __slots__ = ("nvars", "cap", "terms", "center")

    def __init__(self, nvars, cap, terms=None, center=None):
        self.nvars = nvars
        self.cap = cap
        self.center = center
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0 and sum(e) <= cap:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars, cap, c, center=None):
        return cls(nvars, cap, {(0,) * nvars: c}, center)

    @classmethod
    def variable(cls, nvars, cap, i, center=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, cap, {tuple(e): 1}, center)

    def _like(self, terms):
        s = TruncSeries.__new__(TruncSeries)
        s.nvars, s.cap, s.center, s.terms = self.nvars, self.cap, self.center, terms
        return s

    def one(self):
        return TruncSeries.constant(self.nvars, self.cap, 1, self.center)

    def zero(self):
        return TruncSeries(self.nvars, self.cap, None, self.center)

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def coefficient(self, e):
        return self.terms.get(tuple(e), 0)

    def truncate(self, cap):
        return TruncSeries(self.nvars, cap, self.terms, self.center)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(self.nvars, self.cap, other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "TruncSeries(%d, cap=%d, %r)" % (self.nvars, self.cap, self.terms)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(self.nvars, self.cap, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        cap = min(self.cap, other.cap)
        if cap < self.cap or cap < other.cap:
            out = {e: c for e, c in out.items() if sum(e) <= cap}
        res = self._like(out)
        res.cap = cap
        return res

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(self.nvars, self.cap, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            if other == 0:
                return self.zero()
            return self._like({e: c * other for e, c in self.terms.items()})
        cap = min(self.cap, other.cap)
        out = {}
        if self.nvars == 1:
            for (i,), c1 in self.terms.items():
                if i > cap:
                    continue
                for (j,), c2 in other.terms.items():
                    k = i + j
                    if k <= cap:
                        out[(k,)] = out.get((k,), 0) + c1 * c2
        else:
            for e1, c1 in self.terms.items():
                d1 = sum(e1)
                for e2, c2 in other.terms.items():
                    if d1 + sum(e2) <= cap:
                        e = tuple(a + b for a, b in zip(e1, e2))
                        out[e] = out.get(e, 0) + c1 * c2
        res = self._like({e: c for e, c in out.items() if c})
        res.cap = cap
        return res

    def __rmul__(self, other):
        return self * other

    def scale(self, s):
        return self * s

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * series_invert(other)
        return self * (1 / as_fraction(other))

    def inverse(self):
        return series_invert(self)

    def __pow__(self, k):
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def series_invert(s):
    """Inverse of a unit truncated series, exact up to its cap."""
    c0 = s.constant_term()
    if c0 == 0:
        raise ZeroDivisionError("non-unit series")
    inv0 = 1 / as_fraction(c0)
    # s = c0 (1 + u) with u in the maximal ideal; 1/(1+u) = sum (-u)^k, k <= cap
    u = s * inv0 - 1
    acc = s.one()
    for _ in range(s.cap):
        acc = 1 - u * acc
    return acc * inv0


# ---------------------------------------------------------------- Q[T]/(m)

class ModPoly:
    """Element of Q[T]/(m), backed by flint rational polynomials."""

    __slots__ = ("p", "mod")

    def __init__(self, p, mod):
        if not isinstance(p, flint.fmpq_poly):
            p = flint.fmpq_poly(p) if isinstance(p, list) else flint.fmpq_poly([to_flint_scalar(p)])
        if p.degree() >= mod.degree():
            p = p % mod
        self.p = p
        self.mod = mod

    def _wrap(self, p):
        r = ModPoly.__new__(ModPoly)
        r.p, r.mod = p, self.mod
        return r

    def one(self):
        return self._wrap(flint.fmpq_poly([1]))

    def zero(self):
        return self._wrap(flint.fmpq_poly([]))

    def is_zero(self):
        return self.p.is_zero()

    def _coerce(self, other):
        if isinstance(other, ModPoly):
            return other.p
        return flint.fmpq_poly([to_flint_scalar(other)])

    def __eq__(self, other):
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self.p))

    def __repr__(self):
        return "ModPoly(%s mod %s)" % (self.p, self.mod)

    def __neg__(self):
        return self._wrap(-self.p)

    def __add__(self, other):
        return self._wrap(self.p + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.p - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.p)

    def __mul__(self, other):
        if isinstance(other, ModPoly):
            return self._wrap((self.p * other.p) % self.mod)
        return self._wrap(self.p * to_flint_scalar(other))

    __rmul__ = __mul__

    def scale(self, s):
        return self._wrap(self.p * to_flint_scalar(s))

    def __pow__(self, k):
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_unit(self):
        return self.p.gcd(self.mod).degree() == 0 and not self.p.is_zero()

    def inverse(self):
        return self._wrap(inverse_mod(self.p, self.mod))


def inverse_mod(a, m):
    """Inverse of a modulo m over Q.

    Small degrees use the extended Euclidean algorithm.  Large ones solve the
    linear system of multiplication by a, which flint handles multimodularly
    and is much faster than rational Euclid when coefficients are big.
    """
    D = m.degree()
    if a.is_zero() or a.gcd(m).degree() != 0:
        raise ZeroDivisionError("not a unit modulo the minimal polynomial")
    if D <= 16:
        g, s, _ = a.xgcd(m)
        return (s * (1 / g[0])) % m
    mat = flint.fmpq_mat(D, D)
    cur = a % m
    x = flint.fmpq_poly([0, 1])
    for k in range(D):
        for r, c in enumerate(cur.coeffs()):
            mat[r, k] = c
        cur = (cur * x) % m
    e = flint.fmpq_mat(D, 1)
    e[0, 0] = 1
    sol = mat.solve(e)
    return flint.fmpq_poly([sol[r, 0] for r in range(D)])
