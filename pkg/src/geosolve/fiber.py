"""Geometric resolutions of zero-dimensional varieties and their checks.

A resolution stores a primitive linear form with integer coefficients
``lam``, the primitive minimal polynomial ``q`` of that form, and for each
coordinate an integer ``rho`` and a polynomial ``v`` with
``rho * X_i = v(T)`` on the roots of ``q``.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import flint

from .exact import ModPoly, UniPoly, height
from .linalg import Matrix, companion
from .slp import evaluate


@dataclass(frozen=True)
class GeometricResolution:
    lam: tuple
    q: tuple
    rho: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        object.__setattr__(self, "q", _trim(self.q))
        object.__setattr__(self, "rho", tuple(int(x) for x in self.rho))
        object.__setattr__(self, "v", tuple(_trim(p) for p in self.v))
        if not (len(self.lam) == len(self.rho) == len(self.v)):
            raise ValueError("lam, rho and v must have one entry per variable")

    @property
    def n(self):
        return len(self.lam)

    @property
    def degree(self):
        return len(self.q) - 1

    def q_poly(self):
        return flint.fmpq_poly(list(self.q))

    def q_monic(self):
        q = self.q_poly()
        return q / q.leading_coefficient()

    def param(self, i):
        """Coordinate i as a rational polynomial in T (reduced mod q)."""
        return flint.fmpq_poly(list(self.v[i]), self.rho[i]) if self.v[i] else flint.fmpq_poly([])

    def params(self):
        return [self.param(i) for i in range(self.n)]

    def to_dict(self):
        return {"lambda": [str(x) for x in self.lam],
                "q": [str(c) for c in self.q],
                "params": [{"rho": str(r), "v": [str(c) for c in p]}
                           for r, p in zip(self.rho, self.v)]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls([int(x) for x in d["lambda"]], [int(c) for c in d["q"]],
                   [int(p["rho"]) for p in d["params"]],
                   [[int(c) for c in p["v"]] for p in d["params"]])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _trim(p):
    p = [int(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def resolution_from_rational(lam, q, params):
    """Integer resolution from a rational minimal polynomial and rational
    parametrizations (flint polynomials), taking primitive parts."""
    qz = q.numer()
    content = qz.content()
    if qz.leading_coefficient() < 0:
        content = -content
    qi = [int(c) // int(content) for c in qz.coeffs()]
    mod = flint.fmpq_poly(qi)
    rho, v = [], []
    for p in params:
        p = p % mod
        if p.is_zero():
            rho.append(1)
            v.append(())
            continue
        rho.append(int(p.denom()))
        v.append(tuple(int(c) for c in p.numer().coeffs()))
    return GeometricResolution(lam, qi, rho, v)


@dataclass(frozen=True)
class LiftingFiber:
    """Fiber over an integer point of a Noether projection.

    ``A`` is the integer change of coordinates X = A Y, ``point`` fixes the
    first n-i of the Y variables and ``resolution`` describes the fiber in
    the last i of them.
    """
    level: int
    A: tuple
    point: tuple
    resolution: GeometricResolution


@dataclass
class MultiplicationTable:
    dim: int
    matrices: list
    companion: Matrix


def mult_table_from_resolution(res):
    """Commuting multiplication matrices of the coordinates in the basis 1, T, ..."""
    alpha = res.q[-1]
    qm = UniPoly([Fraction(c, alpha) for c in res.q])
    M = Matrix(companion(qm))
    mats = []
    for r, v in zip(res.rho, res.v):
        P = UniPoly([Fraction(c, r) for c in v])
        mats.append(P(M) if not P.is_zero() else M.zero())
    return MultiplicationTable(res.degree, mats, M)


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)
    details: list = field(default_factory=list)

    @property
    def ok(self):
        return all(self.checks.values())

    def to_dict(self):
        return {"ok": self.ok, "checks": dict(self.checks), "details": list(self.details)}


def _radical_divides(r, m):
    """Every prime factor of r divides m (r, m nonzero integers)."""
    r, m = abs(r), abs(m)
    while r > 1:
        g = gcd(r, m)
        if g == 1:
            return False
        while r % g == 0:
            r //= g
    return True


def validate_resolution(res, system):
    """Run the six exact checks of a resolution against a system program."""
    rep = ValidationReport()
    D = res.degree
    if D < 1:
        rep.checks = {k: False for k in ("squarefree", "degrees", "primitive",
                                        "substitution", "primitive_element", "discriminant")}
        rep.details.append("minimal polynomial has degree < 1")
        return rep
    qz = flint.fmpz_poly(list(res.q))
    qq = res.q_poly()
    rep.checks["squarefree"] = qq.gcd(qq.derivative()).degree() == 0
    rep.checks["degrees"] = all(len(v) <= D for v in res.v)
    prim = qz.content() == 1
    for r, v in zip(res.rho, res.v):
        g = abs(r)
        for c in v:
            g = gcd(g, c)
        prim = prim and g == 1 and r != 0
    rep.checks["primitive"] = prim
    mod = res.q_monic()
    xs = [ModPoly(res.param(i), mod) for i in range(res.n)]
    vals = evaluate(system, xs, ModPoly(flint.fmpq_poly([1]), mod)) if system is not None else []
    bad = [k for k, val in enumerate(vals) if not val.is_zero()]
    rep.checks["substitution"] = not bad
    for k in bad:
        rep.details.append("equation %d does not vanish on the parametrization" % (k + 1))
    u = flint.fmpq_poly([])
    for lam, x in zip(res.lam, xs):
        u = u + lam * x.p
    rep.checks["primitive_element"] = (u - flint.fmpq_poly([0, 1])) % mod == 0
    disc = int(qz.discriminant()) if D >= 1 else 0
    rho = 1
    for r in res.rho:
        rho *= r
    # disc = Res(q, q') / lc(q) up to sign; after taking primitive parts the
    # denominators need not be multiples of it, so only nonvanishing is a check
    rep.checks["discriminant"] = disc != 0
    for name, ok in rep.checks.items():
        if not ok and name != "substitution":
            rep.details.append("check failed: %s" % name)
    if disc != 0 and not _radical_divides(rho, disc * res.q[-1]):
        rep.details.append("note: some denominator primes do not divide lc(q) * disc(q)")
    return rep


def resolution_height(res):
    coeffs = list(res.q)
    for r, v in zip(res.rho, res.v):
        coeffs.append(r)
        coeffs.extend(v)
    return height(coeffs)


def clean_fiber(res):
    """Primitive parts everywhere, leading coefficient of q positive."""
    q = res.q_poly()
    return resolution_from_rational(res.lam, q, [res.param(i) for i in range(res.n)])


def scale_resolution(res, c):
    """Multiply q and every (rho, v) pair by c: the same resolution, unreduced."""
    return GeometricResolution(res.lam, [c * a for a in res.q], [c * r for r in res.rho],
                               [[c * a for a in v] for v in res.v])


def coordinate_values(res, prec=64):
    """Numerical points of the variety (for display and oracles only)."""
    qz = flint.fmpz_poly(list(res.q))
    pts = []
    for root in qz.complex_roots():
        z = root[0] if isinstance(root, tuple) else root
        pts.append([complex(_acb_eval(res.v[i], z)) / res.rho[i] for i in range(res.n)])
    return pts


def _acb_eval(coeffs, z):
    acc = flint.acb(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc
