"""Random planar curves in Noether position and their resultant oracle."""
from fractions import Fraction

import flint

from geosolve.fiber import GeometricResolution, LiftingFiber
from geosolve.slp import parse_poly
from oracles import padd, pscale, pvar, sylvester_resultant


def random_curve(rng, max_deg=3):
    """f = X2^d + lower-degree terms, as (text, dense dict, d)."""
    d = rng.randint(1, max_deg)
    terms = ["X2^%d" % d]
    for i in range(d + 1):
        for j in range(d + 1 - i):
            if (i, j) != (0, d) and j < d and rng.random() < 0.6:
                c = rng.randint(-5, 5)
                if c:
                    terms.append("(%d)*X1^%d*X2^%d" % (c, i, j))
    return " + ".join(terms), d


def fiber_resolution(f_dense, p, lam):
    """Resolution of f(p, Y) = 0 in the form lam * Y = T, or None if not smooth."""
    coeffs = {}
    for (i, j), c in f_dense.items():
        coeffs[j] = coeffs.get(j, 0) + c * Fraction(p) ** i
    d = max(coeffs)
    # lam^d f(p, T / lam)
    q = [coeffs.get(j, 0) * Fraction(lam) ** (d - j) for j in range(d + 1)]
    qq = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in q])
    if qq.gcd(qq.derivative()).degree() > 0:
        return None
    den = 1
    for c in q:
        den = den * c.denominator
    qi = qq * den
    qi = qi.numer()
    qi = qi / qi.content()
    ints = [int(c) for c in qi.coeffs()]
    return GeometricResolution([lam], ints, [lam], [[0, 1]])


def oracle_minimal_polynomial(f_dense, lam):
    """Res_Y(f(X1, Y), T - lam Y) made monic in T, as {(i, k): c} for X1^i T^k."""
    f3 = {(i, j, 0): Fraction(c) for (i, j), c in f_dense.items()}
    g = padd(pvar(3, 2), pscale(pvar(3, 1), -lam))
    r = sylvester_resultant(f3, g, 1, 3)
    top = max(k for (_, _, k) in r)
    lead = r[(0, 0, top)]
    assert set(e for e in r if e[2] == top) == {(0, 0, top)}
    return {(i, k): c / lead for (i, _, k), c in r.items()}


def curve_as_bivariate(curve, coeffs=None):
    """{(i, k): c} for the coefficients c X1^i T^k of q, or of ``coeffs``."""
    out = {}
    for k, c in enumerate(curve.q if coeffs is None else coeffs):
        for i, a in enumerate(c.coeffs()):
            if a != 0:
                out[(i, k)] = Fraction(int(a.p), int(a.q))
    return out


def lifting_fiber(f_dense, p, lam):
    res = fiber_resolution(f_dense, p, lam)
    if res is None:
        return None
    return LiftingFiber(1, ((1, 0), (0, 1)), (p,), res)


def program(text):
    return parse_poly(text, ["X1", "X2"])

