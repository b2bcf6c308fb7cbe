"""Symbolic Newton-Hensel lifting.

``newton_numerators`` builds division-free programs for iterates of the
Newton operator.  ``lift_fiber`` lifts a smooth zero-dimensional fiber to a
curve in one free variable by running Newton directly on multiplication
matrices whose entries are truncated power series.
"""
from dataclasses import dataclass
from math import ceil, gcd, log2

import flint

from .errors import DegreeBoundError, NotSmoothError, PrimitiveElementError
from .exact import TruncSeries, as_fraction, series_invert, to_flint_scalar
from .fiber import mult_table_from_resolution
from .linalg import Matrix, NotPrimitiveError, adjoint_det, berkowitz_charpoly, cyclic_solve
from .slp import (SlpBuilder, compose, derive_all, evaluate, homogeneous_components,
                  to_mpoly)


@dataclass
class NewtonIterate:
    k: int
    slp: object

    def numerators(self):
        return list(range(self.slp.nvars))

    def evaluate(self, point):
        vals = evaluate(self.slp, point)
        return vals[:-1], vals[-1]


def newton_numerators(system, k, degree=None):
    """Program computing (g_1..g_n, h) with g/h the k-fold Newton iterate of ``system``.

    The operator is N(X) = (J X - adj(Df) f) / J.  Numerators and the
    denominator are homogenized to the common degree n*d+1 so iterating is
    just substitution of (h, g) into the homogenized forms.
    """
    n = system.nvars
    if degree is None:
        degree = max(p.total_degree() for p in to_mpoly(system))
    nu = n * degree + 1
    b = SlpBuilder(n, system.names)
    xs = b.variables()
    vals = compose(derive_all(system), xs, b)
    f = vals[:n]
    jac = [vals[n + r * n: n + (r + 1) * n] for r in range(n)]
    adj, J = adjoint_det(jac, b.const(1))
    G = [J * xs[i] - sum((adj[i][c] * f[c] for c in range(n)), b.const(0)) for i in range(n)]
    comps = homogeneous_components(b.build(G + [J]), nu)

    out = SlpBuilder(n, system.names)
    g = out.variables()
    h = out.const(1)
    for _ in range(k):
        cv = compose(comps, g, out)
        hp = [out.const(1)]
        for _ in range(nu):
            hp.append(hp[-1] * h)
        new = []
        for i in range(n + 1):
            block = cv[i * (nu + 1):(i + 1) * (nu + 1)]
            acc = out.const(0)
            for m, c in enumerate(block):
                if not c.is_zero():
                    acc = acc + c * hp[nu - m]
            new.append(acc)
        g, h = new[:n], new[n]
    return NewtonIterate(k, out.build(g + [h]))


def restrict_system(system, A, fixed, eqs):
    """Program for f_e(A Y), e in ``eqs``, with the leading Y coordinates fixed.

    The remaining Y coordinates become the inputs of the new program, in order.
    """
    n = system.nvars
    nfree = n - len(fixed)
    b = SlpBuilder(nfree)
    ys = [b.const(c) for c in fixed] + b.variables()
    xs = []
    for row in A:
        acc = b.const(0)
        for a, y in zip(row, ys):
            if a:
                acc = acc + y * a
        xs.append(acc)
    return b.build(compose(system.select(eqs), xs, b))


@dataclass
class LiftedCurve:
    """Curve in (X_free, dependent variables) given in Kronecker form.

    ``q`` lists the coefficients of T^0..T^D as flint polynomials in X_free
    (monic in T), ``w[j]`` lists those of the numerator with
    dq/dT * Y_j = w_j mod q.  ``lam`` is the primitive linear form on the
    dependent variables and ``point`` the lifting coordinate of X_free.
    """
    level: int
    point: int
    cap: int
    lam: tuple
    q: list
    w: list

    @property
    def degree(self):
        return len(self.q) - 1

    def q_at(self, x):
        return flint.fmpq_poly([c(to_flint_scalar(x)) for c in self.q])

    def w_at(self, j, x):
        return flint.fmpq_poly([c(to_flint_scalar(x)) for c in self.w[j]])

    def x_degree(self):
        return max(max((c.degree() for c in self.q), default=0),
                   max((c.degree() for w in self.w for c in w), default=0))

    def integer_form(self):
        """(q, [(rho_j, v_j)]) over Z: q primitive and rho_j q_T Y_j = v_j mod q.

        Bivariate polynomials are dicts {(i, k): c} for c X^i T^k.
        """
        qd = _bivariate(self.q)
        den = 1
        for c in qd.values():
            den = den * c.denominator // gcd(den, c.denominator)
        qi = {e: int(c * den) for e, c in qd.items()}
        g = 0
        for c in qi.values():
            g = gcd(g, c)
        qi = {e: c // g for e, c in qi.items()}
        scale_q = as_fraction(den) / g
        params = []
        for w in self.w:
            wd = {e: c * scale_q for e, c in _bivariate(w).items()}
            d = 1
            for c in wd.values():
                d = d * c.denominator // gcd(d, c.denominator)
            vi = {e: int(c * d) for e, c in wd.items()}
            g = d
            for c in vi.values():
                g = gcd(g, c)
            params.append((d // g, {e: c // g for e, c in vi.items()}))
        return qi, params


def _bivariate(coeffs):
    out = {}
    for k, c in enumerate(coeffs):
        for i, a in enumerate(c.coeffs()):
            if a != 0:
                out[(i, k)] = as_fraction(a)
    return out


def _series_matrix(M, cap):
    return Matrix([[TruncSeries.constant(1, cap, as_fraction(x)) for x in r] for r in M.rows])


def _recap(M, cap):
    return Matrix([[TruncSeries(1, cap, s.terms) for s in r] for r in M.rows])


def _poly_from_series(s, delta, p):
    """Polynomial in X from a series in t = X - p, with the degree bound checked."""
    if s.coefficient((delta + 1,)) != 0:
        raise DegreeBoundError("series coefficient beyond the degree bound")
    coeffs = [0] * (delta + 1)
    for (k,), c in s.terms.items():
        coeffs[k] = c
    poly = flint.fmpq_poly([to_flint_scalar(c) for c in coeffs])
    return poly(flint.fmpq_poly([-p, 1]))


def newton_series(system_g, mats, p, delta):
    """Lift commuting fiber matrices to series matrices solving g(p + t, Y) = 0.

    ``system_g`` has inputs (X_free, Y_1..Y_i) and i outputs.  Returns the
    lifted matrices at cap delta + 1.
    """
    i = len(mats)
    D = mats[0].shape[0] if mats else 0
    dslp = derive_all(system_g)
    kappa = 1 + (ceil(log2(delta)) if delta > 1 else 0)
    x = [_series_matrix(m, 1) for m in mats]
    final = delta + 1
    step = 0
    while True:
        step += 1
        cap = min(2 ** step, final)
        x = [_recap(m, cap) for m in x]
        one = TruncSeries.constant(1, cap, 1)
        ident = Matrix.identity(D, one)
        t = TruncSeries(1, cap, {(0,): p, (1,): 1})
        free = Matrix.scalar(t, D)
        vals = evaluate(dslp, [free] + x, ident)
        F = vals[:i]
        nv = 1 + i
        jac = [[vals[i + r * nv + 1 + c] for c in range(i)] for r in range(i)]
        if i == 1:
            adj, det = [[ident]], jac[0][0]
        else:
            adj, det = adjoint_det(jac, ident)
        adj2, d2 = adjoint_det(det.rows, one)
        try:
            inv = series_invert(d2)
        except ZeroDivisionError:
            raise NotSmoothError("fiber not smooth / bad lifting point") from None
        det_inv = Matrix(adj2) * inv
        new = []
        for j in range(i):
            corr = None
            for c in range(i):
                term = adj[j][c] * F[c]
                corr = term if corr is None else corr + term
            new.append(x[j] - det_inv * corr)
        x = new
        if step >= kappa and cap == final:
            break
    return x


def lift_fiber(fiber, system, delta_bound):
    """Lift a lifting fiber at level i to the curve over its last free coordinate."""
    res = fiber.resolution
    i = fiber.level
    fixed = tuple(fiber.point[:-1])
    p = fiber.point[-1]
    g = restrict_system(system, fiber.A, fixed, list(range(i)))
    return lift_restricted(res, g, p, delta_bound, level=i)


def lift_restricted(res, g, p, delta_bound, level=None):
    """Lift ``res`` (a fiber of g(p, Y) = 0) to a curve in X_free."""
    delta = max(1, delta_bound)
    table = mult_table_from_resolution(res)
    x = newton_series(g, table.matrices, p, delta)
    D = res.degree
    cap = delta + 1
    one = TruncSeries.constant(1, cap, 1)
    zero = TruncSeries(1, cap)
    U = None
    for lam, m in zip(res.lam, x):
        if lam:
            U = m * lam if U is None else U + m * lam
    if U is None:
        raise PrimitiveElementError("zero linear form")
    chi = berkowitz_charpoly(U.rows, one)
    a = [chi[k] if k < len(chi) else zero for k in range(D + 1)]
    q = [_poly_from_series(s, delta, p) for s in a]
    e = [one] + [zero] * (D - 1)
    krylov = [e]
    for _ in range(D - 1):
        krylov.append(U.apply(krylov[-1]))
    dchi_e = None
    for k in range(1, D + 1):
        term = [s * (k * a[k]) for s in krylov[k - 1]]
        dchi_e = term if dchi_e is None else [u + v for u, v in zip(dchi_e, term)]
    w = []
    for m in x:
        target = m.apply(dchi_e)
        try:
            coords = cyclic_solve(U.rows, e, target, one)
        except NotPrimitiveError:
            raise PrimitiveElementError("primitive element failure") from None
        w.append([_poly_from_series(s, delta, p) for s in coords])
    return LiftedCurve(level, p, cap, tuple(res.lam), q, w)
