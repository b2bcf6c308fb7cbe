"""Certified lower bounds on the denominators of rational approximations.

If a point alpha of V is approximated by a = p/q at level eps and the
augmented system with (q X_1 - p)(q X_1 - conj(p)) has a Bezout witness
(a0, g), then 1 <= |g(alpha)| q^2 eps (2|alpha| + 1), which gives
log2 q >= (-log2 eps - log2 |g(alpha)| - log2(2|alpha| + 1)) / 2.
Every quantity below is an exact rational rounded in the safe direction.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import flint

from .duality import bezout_witness
from .exact import log2_upper
from .fiber import resolution_height
from .slp import SlpBuilder, degree_height_value_bounds, to_mpoly

__all__ = ["norm_denominator_bounds", "build_separating_polynomial", "ApproximationQuery",
           "BoundReport", "certified_denominator_bound", "real_root_intervals",
           "Interval"]


def norm_denominator_bounds(res):
    """(d_V bound, upper bound on log2 of the norm bound of V).

    d_V <= |lc(q)^(D-1) * prod(rho_i)| and |V| <= sqrt(n) D 2^(D ht), with
    ht the height of the concrete resolution.  The norm bound is returned
    as log2 because sqrt(n) is irrational.
    """
    D = res.degree
    d = abs(res.q[-1]) ** (D - 1)
    for r in res.rho:
        d *= abs(r)
    ht = resolution_height(res)
    log_norm = Fraction(1, 2) * log2_upper(res.n) + log2_upper(D) + D * ht
    return d, log_norm


def build_separating_polynomial(p, q, nvars=1):
    """Program for (q X_1 - p)(q X_1 - conj p) with p a Gaussian integer.

    ``p`` is an int, a complex with integral parts, or a pair (re, im).
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    re, im = _gaussian(p)
    b = SlpBuilder(nvars)
    x = b.var(0)
    # q^2 X^2 - 2 q re X + (re^2 + im^2)
    poly = x * x * (q * q) - x * (2 * q * re) + (re * re + im * im)
    return b.build([poly])


def _gaussian(p):
    if isinstance(p, tuple):
        return int(p[0]), int(p[1])
    if isinstance(p, complex):
        if p.real != int(p.real) or p.imag != int(p.imag):
            raise ValueError("p must be a Gaussian integer")
        return int(p.real), int(p.imag)
    return int(p), 0


# ---------------------------------------------------------------- intervals

class Interval:
    """Closed interval with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        self.lo = Fraction(lo)
        self.hi = Fraction(lo if hi is None else hi)

    def __add__(self, o):
        o = _iv(o)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-_iv(o))

    def __mul__(self, o):
        o = _iv(o)
        c = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(c), max(c))

    __rmul__ = __mul__

    def magnitude(self):
        return max(abs(self.lo), abs(self.hi))

    def __repr__(self):
        return "[%s, %s]" % (self.lo, self.hi)


def _iv(x):
    return x if isinstance(x, Interval) else Interval(x)


def _horner(coeffs, x):
    acc = Interval(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sturm_chain(q):
    chain = [q, q.derivative()]
    while chain[-1].degree() > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r)
    return chain


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        v = p(flint.fmpq(x.numerator, x.denominator))
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_root_intervals(coeffs, bits=64):
    """Disjoint rational intervals of width <= 2^-bits, one per real root.

    Uses a Sturm sequence of the squarefree integer polynomial and bisection.
    """
    q = flint.fmpq_poly(list(coeffs))
    chain = _sturm_chain(q)
    lc = abs(Fraction(int(coeffs[-1])))
    bound = 1 + max(abs(Fraction(int(c))) for c in coeffs[:-1]) / lc
    bound = Fraction(int(bound) + 1)
    todo = [(-bound, bound)]
    out = []
    width = Fraction(1, 1 << bits)
    while todo:
        lo, hi = todo.pop()
        k = _sign_changes(chain, lo) - _sign_changes(chain, hi)
        if k == 0:
            continue
        if k == 1 and hi - lo <= width:
            out.append(Interval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if q(flint.fmpq(mid.numerator, mid.denominator)) == 0:
            out.append(Interval(mid, mid))
            eps = min(width, (hi - lo) / 4)
            # exclude the exact root from both halves
            while _sign_changes(chain, mid - eps) - _sign_changes(chain, mid + eps) != 1:
                eps /= 2
            todo.append((lo, mid - eps))
            todo.append((mid + eps, hi))
            continue
        todo.append((lo, mid))
        todo.append((mid, hi))
    return sorted(out, key=lambda iv: iv.lo)


def _point_enclosures(res, bits=64):
    """Interval boxes for the points of V when all roots of q are real, else None."""
    roots = real_root_intervals(res.q, bits)
    if len(roots) != res.degree:
        return None
    boxes = []
    for t in roots:
        boxes.append([_horner([Fraction(c) for c in v], t) * Fraction(1, r) if v else Interval(0)
                      for r, v in zip(res.rho, res.v)])
    return boxes


def _sqrt_upper(x, bits=64):
    """Rational upper bound for sqrt(x), x >= 0 rational."""
    scale = 1 << (2 * bits)
    num = x.numerator * scale
    r = isqrt(num // x.denominator) + 1
    return Fraction(r, 1 << bits)


def _log2_two_b_plus_one(log_b):
    """Upper bound for log2(2 B + 1) from an upper bound on log2 B."""
    return max(log_b + 1, Fraction(0)) + 1


# ---------------------------------------------------------------- query

@dataclass
class ApproximationQuery:
    resolution: object
    system: object
    p: object
    q: int
    eps: Fraction

    def __post_init__(self):
        self.eps = Fraction(self.eps)
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if not (0 < self.eps <= 1):
            raise ValueError("epsilon must lie in (0, 1]")


@dataclass
class BoundReport:
    bound: Fraction
    log2_value_bound: Fraction
    log2_norm_bound: Fraction
    denominator_bound: int
    log2_eps_lower: Fraction
    symbolic: str
    witness_a: int
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {"log2_q_lower_bound": str(self.bound),
                "log2_value_bound": str(self.log2_value_bound),
                "log2_norm_bound": str(self.log2_norm_bound),
                "denominator_bound": str(self.denominator_bound),
                "minus_log2_eps": str(self.log2_eps_lower),
                "witness_a": str(self.witness_a),
                "symbolic": self.symbolic,
                "trace": list(self.trace)}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _slp_of_dense(p):
    """Program for a dense polynomial with shared monomial powers."""
    b = SlpBuilder(p.nvars)
    xs = b.variables()
    acc = b.const(0)
    powers = {}
    for e, c in sorted(p.terms.items()):
        term = b.const(1)
        for j, k in enumerate(e):
            if k:
                if (j, k) not in powers:
                    powers[(j, k)] = xs[j] ** k
                term = term * powers[(j, k)]
        acc = acc + term * c
    return b.build([acc])


def _value_bound_lemma(g, log_norm):
    """Upper bound on log2 |g(alpha)| for |alpha_i| <= 2^H, from the program shape."""
    return degree_height_value_bounds(_slp_of_dense(g), max(log_norm, Fraction(1)))[2]


def _value_bound_intervals(g, boxes):
    best = Fraction(0)
    for box in boxes:
        acc = Interval(0)
        for e, c in g.terms.items():
            term = Interval(c)
            for j, k in enumerate(e):
                for _ in range(k):
                    term = term * box[j]
            acc = acc + term
        best = max(best, acc.magnitude())
    return best


def certified_denominator_bound(query, witness=None, metrics=None):
    """Certified lower bound on log2 q for an approximation at level eps.

    ``witness`` is a Bezout witness for the system augmented with the
    separating polynomial of (p, q); it is computed when not given.
    ``metrics`` may carry (n, d, h) for the symbolic form.
    """
    res, system = query.resolution, query.system
    n = system.nvars
    trace = []
    if witness is None:
        sep = build_separating_polynomial(query.p, query.q, n)
        witness = bezout_witness(res, sep, system)
    if witness is None:
        raise ValueError("a Bezout witness is required")
    dV, log_norm_formula = norm_denominator_bounds(res)
    trace.append("denominator bound d_V <= %d" % dV)
    trace.append("log2 |V| <= %s (formula)" % log_norm_formula)
    boxes = _point_enclosures(res)
    log_norm = log_norm_formula
    if boxes is not None:
        sq = max(sum((iv.magnitude() ** 2 for iv in box), Fraction(0)) for box in boxes)
        norm_iv = _sqrt_upper(sq)
        log_norm_iv = log2_upper(norm_iv) if norm_iv > 0 else Fraction(-64)
        trace.append("log2 |V| <= %s (real root enclosures)" % log_norm_iv)
        log_norm = min(log_norm, log_norm_iv)
    log_g = _value_bound_lemma(witness.g, log_norm)
    trace.append("log2 |g(alpha)| <= %s (program value bound)" % log_g)
    if boxes is not None:
        val = _value_bound_intervals(witness.g, boxes)
        log_g_iv = log2_upper(val) if val > 0 else None
        if log_g_iv is not None:
            trace.append("log2 |g(alpha)| <= %s (interval evaluation)" % log_g_iv)
            log_g = min(log_g, log_g_iv)
    minus_log_eps = -log2_upper(query.eps)
    log_norm_term = _log2_two_b_plus_one(log_norm)
    bound = (minus_log_eps - log_g - log_norm_term) / 2
    trace.append("-log2 eps >= %s" % minus_log_eps)
    trace.append("log2(2|V| + 1) <= %s" % log_norm_term)
    trace.append("log2 q >= (%s - %s - %s) / 2 = %s"
                 % (minus_log_eps, log_g, log_norm_term, bound))
    if metrics is not None:
        nn, d, h = metrics
    else:
        nn = n
        d = max(p.total_degree() for p in to_mpoly(system))
        h = system.param_height
    eta = resolution_height(res)
    delta = res.degree
    symbolic = "%s / (%d*%d*%d)^C - (%s + %s) <= log2 q" % (minus_log_eps, nn, d, delta, h, eta)
    return BoundReport(bound, log_g, log_norm, dV, minus_log_eps, symbolic, witness.a, trace)
