"""Incremental geometric solving and the consistency decision.

Level i holds a lifting fiber of f_1..f_i: after a change of coordinates
X = A Y, the first n-i coordinates of Y are fixed to an integer point and the
fiber is a resolution in the last i.  One step frees the coordinate Y_{n-i},
lifts the fiber to a curve by Newton iteration, and cuts the curve with
f_{i+1} to get the fiber at level i+1.
"""
import functools
import random
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from .errors import (EmptyFiberError, HypothesisViolation, LiftingPointError, NonRadicalError,
                     NotRegularError, NotSmoothError, PrimitiveElementError)
from .exact import ModPoly, as_fraction, inverse_mod, ring_one, ring_zero, to_flint_scalar
from .fiber import (GeometricResolution, LiftingFiber, clean_fiber, resolution_from_rational,
                    validate_resolution)
from .linalg import Matrix, adjoint_det, berkowitz_charpoly, companion, determinant
from .newton import LiftedCurve, lift_restricted, restrict_system
from .slp import SlpBuilder, compose, derive_all, evaluate, to_mpoly

__all__ = ["solve_system", "decide_consistency", "reduce_system", "intersect_with_hypersurface",
           "choose_lifting_data", "clean_fiber", "Solution", "ConsistencyVerdict"]

X = flint.fmpq_poly([0, 1])
ONE = flint.fmpq_poly([1])


# ---------------------------------------------------------------- small rings

class _Dual:
    """a0 + a1*eps with eps^2 = 0, over any ring."""

    __slots__ = ("a0", "a1")

    def __init__(self, a0, a1):
        self.a0, self.a1 = a0, a1

    def one(self):
        return _Dual(ring_one(self.a0), ring_zero(self.a0))

    def zero(self):
        return _Dual(ring_zero(self.a0), ring_zero(self.a0))

    def is_zero(self):
        return self.a0 == 0 and self.a1 == 0

    def __add__(self, o):
        return _Dual(self.a0 + o.a0, self.a1 + o.a1)

    def __sub__(self, o):
        return _Dual(self.a0 - o.a0, self.a1 - o.a1)

    def __neg__(self):
        return _Dual(-self.a0, -self.a1)

    def __mul__(self, o):
        if isinstance(o, _Dual):
            return _Dual(self.a0 * o.a0, self.a0 * o.a1 + self.a1 * o.a0)
        return _Dual(self.a0 * o, self.a1 * o)

    __rmul__ = __mul__


class _CurveRing:
    """Q[X][T]/(q) for q monic in T; elements are coefficient lists in T."""

    def __init__(self, q):
        self.q = q
        self.D = len(q) - 1

    def reduce(self, coeffs):
        c = list(coeffs)
        D = self.D
        for k in range(len(c) - 1, D - 1, -1):
            top = c[k]
            if top == 0:
                continue
            for j in range(D):
                c[k - D + j] = c[k - D + j] - top * self.q[j]
            c[k] = 0
        c = c[:D] + [flint.fmpq_poly([])] * max(0, D - len(c))
        return c

    def mul(self, a, b):
        out = [flint.fmpq_poly([]) for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y != 0:
                    out[i + j] = out[i + j] + x * y
        return self.reduce(out)

    def const(self, c):
        return [c] + [flint.fmpq_poly([]) for _ in range(self.D - 1)]

    def is_zero(self, a):
        return all(x == 0 for x in a)


class _Frac:
    """Element num / den^k of the curve ring, den fixed (used for dq/dT)."""

    __slots__ = ("ring", "den", "num", "k")

    def __init__(self, ring, den, num, k):
        self.ring, self.den, self.num, self.k = ring, den, num, k

    def _lift(self, k):
        num = self.num
        for _ in range(k - self.k):
            num = self.ring.mul(num, self.den)
        return num

    def _coerce(self, o):
        if isinstance(o, _Frac):
            return o
        return _Frac(self.ring, self.den, self.ring.const(flint.fmpq_poly([to_flint_scalar(o)])), 0)

    def one(self):
        return _Frac(self.ring, self.den, self.ring.const(ONE), 0)

    def zero(self):
        return _Frac(self.ring, self.den, self.ring.const(flint.fmpq_poly([])), 0)

    def is_zero(self):
        return self.ring.is_zero(self.num)

    def __add__(self, o):
        o = self._coerce(o)
        k = max(self.k, o.k)
        return _Frac(self.ring, self.den, [a + b for a, b in zip(self._lift(k), o._lift(k))], k)

    __radd__ = __add__

    def __neg__(self):
        return _Frac(self.ring, self.den, [-a for a in self.num], self.k)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        if isinstance(o, _Frac):
            return _Frac(self.ring, self.den, self.ring.mul(self.num, o.num), self.k + o.k)
        s = to_flint_scalar(o)
        return _Frac(self.ring, self.den, [a * s for a in self.num], self.k)

    __rmul__ = __mul__

    def scale(self, s):
        return self * s


# ---------------------------------------------------------------- helpers

def _degrees(system):
    return [max(p.total_degree(), 0) for p in to_mpoly(system)]


def _draw(rng, bound, attempt):
    """Nonzero integer from [-b, b], b growing from 4 to ``bound`` with the attempt."""
    b = min(bound, 4 << attempt)
    c = 0
    while c == 0:
        c = rng.randint(-b, b)
    return c


def _squarefree(p):
    return p.degree() >= 1 and p.gcd(p.derivative()).degree() == 0


def _monic(p):
    return p / p.leading_coefficient()


def _fmpq_matrix_poly(P, C):
    """Evaluate flint polynomial P at the Matrix C (entries fmpq)."""
    n = len(C.rows)
    ident = Matrix.identity(n, flint.fmpq(1))
    acc = None
    for c in reversed(P.coeffs()):
        acc = ident * c if acc is None else acc * C + ident * c
    if acc is None:
        acc = ident * flint.fmpq(0)
    return acc


def _poly_matrix(M):
    return Matrix([[flint.fmpq_poly([x]) for x in r] for r in M.rows])


def _bivariate_at(coeffs, C, Z):
    """sum_k coeffs[k](C) * Z^k with C an fmpq matrix and Z a polynomial matrix."""
    acc = None
    for c in reversed(coeffs):
        term = _poly_matrix(_fmpq_matrix_poly(c, C))
        acc = term if acc is None else acc * Z + term
    return acc


def _derivative_inverse(chi):
    """1 / chi' mod chi, for turning Kronecker numerators into parametrizations."""
    try:
        return inverse_mod(chi.derivative(), chi)
    except ZeroDivisionError:
        raise NonRadicalError("minimal polynomial is not squarefree") from None


def _rational_inverse(A):
    adj, det = adjoint_det([[Fraction(x) for x in r] for r in A])
    if det == 0:
        raise ValueError("singular coordinate change")
    return [[x / det for x in r] for r in adj]


def _int_det(A):
    return determinant([[Fraction(x) for x in r] for r in A])


# ---------------------------------------------------------------- data

@dataclass
class LevelRecord:
    level: int
    degree: int
    lam: tuple
    point: tuple
    height: float
    curve: str
    intersection: str

    def to_dict(self):
        return {"level": self.level, "degree": self.degree, "lambda": list(self.lam),
                "point": list(self.point), "height": self.height, "curve": self.curve,
                "intersection": self.intersection}


@dataclass
class Solution:
    resolution: GeometricResolution
    fibers: list
    A: tuple
    point: tuple
    log: list = field(default_factory=list)
    attempts: int = 1
    failures: list = field(default_factory=list)


class ConsistencyVerdict:
    """Outcome of the consistency test.

    ``determinant`` is det of multiplication by f_{n+1} on the quotient
    algebra; it is computed on first access because for large fibers the
    resultant costs far more than the zero test that decides the verdict.
    """

    def __init__(self, consistent, w=None, common_zeros=None, determinant=None):
        self.consistent = consistent
        self.common_zeros = common_zeros
        self._w = w
        self._det = determinant

    @property
    def determinant(self):
        if self._det is None:
            w = self._w
            self._det = Fraction(0) if w.is_zero() else as_fraction(w.mod.resultant(w.p))
        return self._det

    def to_dict(self):
        d = {"consistent": self.consistent,
             "certificate": {"determinant": str(self.determinant)}}
        if self.common_zeros is not None:
            d["certificate"]["common_zeros"] = self.common_zeros.to_dict()
        return d


@dataclass
class LiftingChoice:
    A: tuple
    point: tuple
    bound: int
    permutation: bool


# ---------------------------------------------------------------- preprocessing

def reduce_system(system, n=None, d=None, seed=0):
    """At most n+1 random integer combinations of the outputs of ``system``."""
    n = system.nvars if n is None else n
    s = len(system.outputs)
    if s <= n + 1:
        return system
    if d is None:
        d = max(_degrees(system))
    rng = random.Random(seed)
    top = max(2, (n * d) ** 2)
    b = SlpBuilder(system.nvars, system.names)
    vals = compose(system, b.variables(), b)
    outs = []
    for _ in range(n + 1):
        acc = b.const(0)
        for v in vals:
            acc = acc + v * rng.randint(1, top)
        outs.append(acc)
    return b.build(outs)


# ---------------------------------------------------------------- lifting data

def _triangular_order(system):
    """Variable order pi with f_k involving only X_pi(1..k) and monic in X_pi(k).

    Such a system is a tower of integral extensions, so the permuted
    coordinates are in Noether position at every level.  None if no order.
    """
    dense = to_mpoly(system)
    n = system.nvars
    used = []
    for p in dense:
        found = None
        for j in range(n):
            if j in used or not p.variables() <= set(used) | {j}:
                continue
            e = max((m[j] for m in p.terms), default=0)
            if e == 0:
                continue
            lead = [m for m in p.terms if m[j] == e]
            if len(lead) == 1 and sum(lead[0]) == e:
                found = j
                break
        if found is None:
            return None
        used.append(found)
    return used


def choose_lifting_data(system, rng, attempt=0, degrees=None):
    """Coordinate change A (X = A Y) and lifting point for one solving attempt.

    On the first attempt a variable permutation is used when the equations
    form a monic triangular tower, which certifies Noether position.
    Otherwise A has random entries in [-B, B]; point coordinates come from
    [1, B^2].
    """
    n = system.nvars
    degrees = degrees or _degrees(system)
    bezout = 1
    for d in degrees:
        bezout *= max(d, 1)
    bound = max(17, n * max(degrees + [1]) * bezout)
    A = None
    perm = False
    if attempt == 0:
        order = _triangular_order(system)
        if order is not None:
            # f_k must pin down Y_{n-k}: X_{order[k]} = Y_{n-1-k}
            A = [[0] * n for _ in range(n)]
            for k, j in enumerate(order):
                A[j][n - 1 - k] = 1
            perm = True
    while A is None:
        cand = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if _int_det(cand) != 0:
            A = cand
    point = tuple(rng.randint(1, bound * bound) for _ in range(n - 1))
    return LiftingChoice(tuple(tuple(r) for r in A), point, bound, perm)


def check_lifting_point(res, system_restricted):
    """(rho * mu)(P) != 0: squarefree fiber and Jacobian a unit on it."""
    q = res.q_monic()
    if not _squarefree(q):
        return False
    return _jacobian_is_unit(res, system_restricted)


def _jacobian_is_unit(res, g):
    """Jacobian determinant of g in all its inputs is a unit modulo q."""
    mod = res.q_monic()
    one = ModPoly(ONE, mod)
    xs = [ModPoly(res.param(j), mod) for j in range(res.n)]
    vals = evaluate(derive_all(g), xs, one)
    m = len(g.outputs)
    n = g.nvars
    jac = [[vals[m + r * n + c] for c in range(n)] for r in range(m)]
    lower = all(jac[r][c].is_zero() for r in range(m) for c in range(r + 1, n))
    upper = all(jac[r][c].is_zero() for r in range(m) for c in range(r))
    if lower or upper:
        det = one
        for r in range(m):
            det = det * jac[r][r]
    else:
        det = determinant(jac, one)
    return det.is_unit()


# ---------------------------------------------------------------- curves

def _cylinder_curve(res, level, p):
    """The fiber does not move with the free coordinate: a constant curve."""
    q = res.q_monic()
    dq = q.derivative()
    w = [(dq * res.param(j)) % q for j in range(res.n)]
    D = res.degree
    qc = [flint.fmpq_poly([c]) for c in q.coeffs()]
    wc = [[flint.fmpq_poly([x.coeffs()[k] if k <= x.degree() else 0]) for k in range(D)]
          for x in w]
    return LiftedCurve(level, p, 1, tuple(res.lam), qc, wc)


def curve_contains(curve, g):
    """Every output of g(X_free, Y) vanishes on the curve (exact check)."""
    ring = _CurveRing(curve.q)
    dq = [curve.q[k] * k for k in range(1, len(curve.q))]
    den = ring.reduce(dq + [flint.fmpq_poly([])])
    xs = [_Frac(ring, den, ring.const(X), 0)] + [_Frac(ring, den, ring.reduce(list(w)), 1)
                                                 for w in curve.w]
    vals = evaluate(g, xs, xs[0].one())
    return all(v.is_zero() for v in vals)


# ---------------------------------------------------------------- intersection

def _intersect_tfree(curve, a, rng, bound, tries=20):
    """Cut the curve by a hypersurface a(X_free) = 0 (independent of the fiber)."""
    am = _monic(a)
    Da = am.degree()
    C = Matrix([[flint.fmpq(as_fraction(x).numerator, as_fraction(x).denominator) for x in r]
                for r in companion([as_fraction(c) for c in am.coeffs()])])
    S = flint.fmpq_poly([0, 1])
    i = len(curve.w)
    dqT = [curve.q[k] * k for k in range(1, len(curve.q))]
    for attempt in range(tries):
        c = _draw(rng, bound, attempt)
        Z = Matrix.identity(Da, S) - _poly_matrix(C) * c
        base = _bivariate_at(curve.q, C, Z)
        chi0 = determinant(base.rows, ONE)
        chi0 = _monic(chi0)
        if not _squarefree(chi0):
            continue
        if chi0.degree() != Da * curve.degree:
            continue
        coords = []
        # X_free: q(X, S - (c + eps) X) = q(X, Z) - eps * X * dq/dT(X, Z)
        xd = _poly_matrix(C) * _bivariate_at(dqT, C, Z)
        dual = [[_Dual(base.rows[r][s], -xd.rows[r][s]) for s in range(Da)] for r in range(Da)]
        dets = [determinant(dual, _Dual(ONE, flint.fmpq_poly([])))]
        for j in range(i):
            wz = _bivariate_at(curve.w[j], C, Z)
            dual = [[_Dual(base.rows[r][s], -wz.rows[r][s]) for s in range(Da)]
                    for r in range(Da)]
            dets.append(determinant(dual, _Dual(ONE, flint.fmpq_poly([]))))
        dinv = _derivative_inverse(chi0)
        for dd in dets:
            W = -dd.a1 / dd.a0.leading_coefficient()
            coords.append((W * dinv) % chi0)
        lam = (c,) + tuple(curve.lam)
        return resolution_from_rational(lam, chi0, coords)
    raise PrimitiveElementError("no separating combination found for the new fiber")


def _intersect_general(curve, h, rng, bound, tries=20):
    """Cut the curve by h(X_free, Y) = 0 through a resultant in T."""
    ring = _CurveRing(curve.q)
    D = curve.degree
    dq = [curve.q[k] * k for k in range(1, len(curve.q))]
    den = ring.reduce(dq + [flint.fmpq_poly([])])
    xs = [_Frac(ring, den, ring.const(X), 0)] + [_Frac(ring, den, ring.reduce(list(w)), 1)
                                                 for w in curve.w]
    A = evaluate(h, xs, xs[0].one())[0]
    if A.is_zero():
        raise NotRegularError("not a regular sequence: equation vanishes on the curve")
    tvar = ring.reduce([flint.fmpq_poly([]), ONE])
    cols = [A.num]
    for _ in range(D - 1):
        cols.append(ring.mul(cols[-1], tvar))
    mat = [[cols[k][r] for k in range(D)] for r in range(D)]
    a = determinant(mat, ONE)
    if a == 0:
        raise NotRegularError("not a regular sequence: resultant vanishes identically")
    if A.k:
        # A carries the factor (dq/dT)^k; its norm is a power of the discriminant
        dcols = [den]
        for _ in range(D - 1):
            dcols.append(ring.mul(dcols[-1], tvar))
        nd = determinant([[dcols[k][r] for k in range(D)] for r in range(D)], ONE) ** A.k
        a, rem = divmod(a, nd)
        if rem != 0:
            raise PrimitiveElementError("norm of the equation is not divisible by the discriminant")
    if a.degree() == 0:
        raise EmptyFiberError("empty fiber")
    if not _squarefree(a):
        raise NonRadicalError("eliminating polynomial is not squarefree")
    am = _monic(a)
    adj, _ = adjoint_det(mat, ONE)
    adj = [[x % am for x in r] for r in adj]
    tau = None
    for _ in range(tries):
        wts = [rng.randint(-bound, bound) for _ in range(D)]
        r0 = sum((adj[k][0] * wts[k] for k in range(D)), flint.fmpq_poly([])) % am
        if D == 1:
            tau = None
            break
        r1 = sum((adj[k][1] * wts[k] for k in range(D)), flint.fmpq_poly([])) % am
        g, s, _ = r0.xgcd(am)
        if g.degree() == 0 and r0 != 0:
            tau = (r1 * s * (1 / g[0])) % am
            break
    else:
        raise PrimitiveElementError("could not read the fiber coordinate from the adjugate")
    mod = ModPoly(ONE, am)
    if D == 1:
        # q = T + q0(X): the unique root is -q0
        tau = (-curve.q[0]) % am
    T = ModPoly(tau, am)

    def at(coeffs):
        acc = mod.zero()
        for c in reversed(coeffs):
            acc = acc * T + ModPoly(c % am, am)
        return acc

    if not at(curve.q).is_zero():
        raise PrimitiveElementError("recovered root does not lie on the curve")
    dval = at(dq)
    if not dval.is_unit():
        raise NotSmoothError("curve parametrization undefined at the new fiber")
    dinv = dval.inverse()
    coords = [ModPoly(X % am, am)] + [at(w) * dinv for w in curve.w]
    hv = evaluate(h, coords, mod)[0]
    if not hv.is_zero():
        raise PrimitiveElementError("intersection check failed")
    return _resolution_from_coordinates(am, coords, rng, bound, tries)


def _resolution_from_coordinates(am, coords, rng, bound, tries=20):
    """Resolution of Q[X]/(am) with given coordinate images, random primitive form."""
    Dp = am.degree()
    for attempt in range(tries):
        lam = [_draw(rng, bound, attempt) for _ in coords]
        u = coords[0].zero()
        for l, c in zip(lam, coords):
            u = u + c * l
        # multiplication matrix of u in the basis 1, X, ..., X^(D'-1)
        cols = []
        basis = ModPoly(ONE, am)
        xm = ModPoly(X % am, am) if Dp > 1 else None
        for k in range(Dp):
            v = (u * basis).p
            cols.append([as_fraction(v.coeffs()[r]) if r <= v.degree() else Fraction(0)
                         for r in range(Dp)])
            if xm is not None:
                basis = basis * xm
        mat = [[cols[k][r] for k in range(Dp)] for r in range(Dp)]
        chi = berkowitz_charpoly(mat)
        chiq = flint.fmpq_poly([to_flint_scalar(c) for c in chi.coeffs])
        if not _squarefree(chiq):
            continue
        # express each coordinate as a polynomial in u: Krylov system
        kry = [ModPoly(ONE, am)]
        for _ in range(Dp - 1):
            kry.append(kry[-1] * u)
        K = flint.fmpq_mat(Dp, Dp)
        for k, e in enumerate(kry):
            cf = e.p.coeffs()
            for r in range(Dp):
                K[r, k] = cf[r] if r < len(cf) else 0
        params = []
        for c in coords:
            rhs = flint.fmpq_mat(Dp, 1)
            cf = c.p.coeffs()
            for r in range(Dp):
                rhs[r, 0] = cf[r] if r < len(cf) else 0
            sol = K.solve(rhs)
            params.append(flint.fmpq_poly([sol[r, 0] for r in range(Dp)]))
        return resolution_from_rational(lam, chiq, params)
    raise PrimitiveElementError("no primitive element found for the new fiber")


def intersect_with_hypersurface(curve, h, rng=None, bound=17):
    """New zero-dimensional fiber: the curve cut by h = 0.

    ``h`` takes (X_free, dependent variables) as inputs.  Returns a
    resolution over those variables in that order.
    """
    rng = rng or random.Random(0)
    deps = h.depends_on()[0]
    if deps <= {0}:
        a = evaluate(h, [X] + [flint.fmpq_poly([])] * len(curve.w), ONE)[0]
        if a == 0:
            raise NotRegularError("not a regular sequence: equation vanishes on the curve")
        if a.degree() == 0:
            raise EmptyFiberError("empty fiber")
        if not _squarefree(a):
            raise NonRadicalError("eliminating polynomial is not squarefree")
        return _intersect_tfree(curve, a, rng, bound)
    return _intersect_general(curve, h, rng, bound)


# ---------------------------------------------------------------- recursion

def _level_one(system, choice):
    n = system.nvars
    g = restrict_system(system, choice.A, choice.point, [0])
    f = evaluate(g, [X], ONE)[0]
    if f == 0:
        raise NotRegularError("first equation vanishes identically on the line")
    if f.degree() == 0:
        raise EmptyFiberError("empty fiber at level 1")
    # squarefree part: smoothness is enforced by the Jacobian test of later
    # levels, so an empty intersection is still reported as such
    f = f / f.gcd(f.derivative())
    res = resolution_from_rational((1,), f, [X])
    if n == 1 and not _jacobian_is_unit(res, g):
        raise NotSmoothError("non-radical/non-smooth at level 1")
    return LiftingFiber(1, choice.A, choice.point, res)


def _to_original(res, A):
    """Resolution in X = A Y from one in Y."""
    n = res.n
    Ainv = _rational_inverse(A)
    lam = [sum((Fraction(res.lam[j]) * Ainv[j][i] for j in range(n)), Fraction(0))
           for i in range(n)]
    den = 1
    for x in lam:
        den = den * x.denominator // gcd(den, x.denominator)
    lam_int = [int(x * den) for x in lam]
    g = 0
    for x in lam_int:
        g = gcd(g, x)
    lam_int = [x // g for x in lam_int]
    s = Fraction(den, g)
    if s == 1:
        q = res.q_poly()
        ys = res.params()
    else:
        sub = flint.fmpq_poly([0, flint.fmpq(s.denominator, s.numerator)])
        q = res.q_poly()(sub)
        ys = [p(sub) for p in res.params()]
    xs = []
    for i in range(n):
        acc = flint.fmpq_poly([])
        for j in range(n):
            if A[i][j]:
                acc = acc + ys[j] * A[i][j]
        xs.append(acc)
    return resolution_from_rational(lam_int, q, xs)


def _solve_once(system, rng, attempt, degrees, log):
    n = system.nvars
    choice = choose_lifting_data(system, rng, attempt, degrees)
    fiber = _level_one(system, choice)
    fibers = [fiber]
    log.append(LevelRecord(1, fiber.resolution.degree, fiber.resolution.lam,
                           choice.point, 0.0, "line", "univariate"))
    for i in range(1, n):
        fixed = choice.point[:n - i - 1]
        p = choice.point[n - i - 1]
        g = restrict_system(system, choice.A, fixed, list(range(i)))
        h = restrict_system(system, choice.A, fixed, [i])
        res = fiber.resolution
        if not any(0 in s for s in g.depends_on()):
            curve = _cylinder_curve(res, i, p)
            kind = "cylinder"
        else:
            bezout = 1
            for d in degrees[:i]:
                bezout *= max(d, 1)
            curve = lift_restricted(res, g, p, bezout, level=i)
            kind = "newton"
        new = intersect_with_hypersurface(curve, h, rng, choice.bound)
        gi = restrict_system(system, choice.A, fixed, list(range(i + 1)))
        if not _jacobian_is_unit(new, gi):
            raise NotSmoothError("non-radical/non-smooth at level %d" % (i + 1))
        fiber = LiftingFiber(i + 1, choice.A, tuple(fixed), new)
        fibers.append(fiber)
        log.append(LevelRecord(i + 1, new.degree, new.lam, tuple(fixed), 0.0, kind,
                               "hypersurface"))
    final = _to_original(fiber.resolution, choice.A)
    return Solution(final, fibers, choice.A, choice.point, log)


def solve_system(system, seed=0, retries=25, validate=False):
    """Geometric resolution of a smooth regular sequence f_1..f_n in n variables.

    Random choices (coordinates, lifting point, primitive forms) are drawn
    from ``random.Random(seed)`` and redrawn after any detected failure, up
    to ``retries`` attempts.
    """
    n = system.nvars
    if len(system.outputs) != n:
        raise ValueError("solve_system needs exactly n equations in n variables")
    degrees = _degrees(system)
    rng = random.Random(seed)
    failures = []
    last = None
    for attempt in range(max(1, retries)):
        log = []
        try:
            sol = _solve_once(system, rng, attempt, degrees, log)
        except (EmptyFiberError, NotRegularError) as e:
            level = len(log) + 1 if log else 1
            raise type(e)("%s at level %d" % (e, level)) from None
        except HypothesisViolation as e:
            level = len(log) + 1
            failures.append("attempt %d, level %d: %s" % (attempt, level, e))
            last = (type(e), level, e)
            continue
        sol.attempts = attempt + 1
        sol.failures = failures
        report = validate_resolution(sol.resolution, system) if validate else None
        if validate and not report.ok:
            failures.append("attempt %d: final validation failed %s" % (attempt, report.details))
            last = (NonRadicalError, n, "validation failed")
            continue
        if report is None and not _substitution_ok(sol.resolution, system):
            failures.append("attempt %d: substitution check failed" % attempt)
            last = (NonRadicalError, n, "substitution check failed")
            continue
        return sol
    cls, level, err = last
    if cls in (NotSmoothError, NonRadicalError):
        raise cls("retry budget exhausted: non-radical/non-smooth at level %d (%s)" % (level, err))
    if cls is PrimitiveElementError:
        raise LiftingPointError("retry budget exhausted: could not find lifting point (%s)" % err)
    raise cls("retry budget exhausted at level %d: %s" % (level, err))


def _substitution_ok(res, system):
    mod = res.q_monic()
    xs = [ModPoly(res.param(i), mod) for i in range(res.n)]
    return all(v.is_zero() for v in evaluate(system, xs, ModPoly(ONE, mod)))


@functools.lru_cache(maxsize=32)
def _cached_solve(text, seed, retries):
    from .slp import Slp
    return solve_system(Slp.from_json(text), seed, retries)


_linear_cache = {}


def _affine_parts(p):
    """(constant, linear coefficients) of a dense polynomial of degree <= 1, else None."""
    if p.total_degree() > 1:
        return None
    n = p.nvars
    lin = tuple(p.coefficient([1 if k == i else 0 for k in range(n)]) for i in range(n))
    return p.coefficient([0] * n), lin


def decide_consistency(system, seed=0, retries=25):
    """Decide whether f_1..f_{n+1} have a common complex zero.

    f_1..f_n are solved; the system is inconsistent iff the multiplication
    matrix of f_{n+1} on their quotient algebra has nonzero determinant.
    """
    n = system.nvars
    if len(system.outputs) != n + 1:
        raise ValueError("decide_consistency needs n+1 equations in n variables")
    first = system.select(range(n))
    sol = _cached_solve(first.to_json(), seed, retries)
    res = sol.resolution
    mod = res.q_monic()
    xs = [ModPoly(res.param(i), mod) for i in range(n)]
    last = system.output(n)
    dense = to_mpoly(last)[0] if last.size <= 64 else None
    affine = _affine_parts(dense) if dense is not None else None
    if affine is not None:
        # the linear part is shared by every right-hand side, so cache it
        c0, lin = affine
        key = (res, lin)
        L = _linear_cache.get(key)
        if L is None:
            L = flint.fmpq_poly([])
            for c, x in zip(lin, xs):
                if c:
                    L = L + x.p * to_flint_scalar(as_fraction(c))
            if len(_linear_cache) > 256:
                _linear_cache.clear()
            _linear_cache[key] = L
        w = ModPoly(L + to_flint_scalar(as_fraction(c0)), mod)
    else:
        w = evaluate(last, xs, ModPoly(ONE, mod))[0]
    # det of multiplication by w vanishes iff w is a zero divisor mod q
    g = mod.gcd(w.p) if not w.is_zero() else mod
    if g.degree() == 0:
        return ConsistencyVerdict(False, w)
    sub = resolution_from_rational(res.lam, g, [res.param(i) for i in range(n)])
    return ConsistencyVerdict(True, w, sub, Fraction(0))
