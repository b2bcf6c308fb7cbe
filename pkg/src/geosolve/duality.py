"""Trace formula on the quotient algebra B = Q[X]/(f_1..f_n).

For a smooth regular sequence, the pseudo-jacobian Delta(X, Y) and the
ordinary trace give a reduction map: g(Y) and Tr(J^-1 g Delta(., Y)) agree
in B, and the right-hand side has degree at most n(d-1) in Y.  Multiplication
matrices of the coordinates stand in for the classes of X.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ConsistentSystemError, NotDivisibleError, NotSmoothError, ZeroDivisorError
from .exact import MPoly
from .fiber import mult_table_from_resolution
from .linalg import Matrix, adjoint_det, determinant
from .slp import SlpBuilder, derive_all, determinant_slp, divided_differences, evaluate

__all__ = ["pseudo_jacobian", "TraceData", "trace_data", "lift_residue", "division_step",
           "bezout_witness", "BezoutWitness"]


def pseudo_jacobian(system):
    """Program over (X, Y) for det of the divided-difference matrix of the system."""
    n = system.nvars
    return determinant_slp(divided_differences(system), n)


@dataclass
class TraceData:
    table: object
    J1: list
    J2: list
    detJ: Fraction
    delta: Matrix
    nvars: int


def _at_matrices(slp, mats):
    D = mats[0].shape[0]
    return evaluate(slp, mats, Matrix.identity(D, Fraction(1)))


def _jacobian_at(system, mats):
    n = system.nvars
    D = mats[0].shape[0]
    one = Matrix.identity(D, Fraction(1))
    vals = evaluate(derive_all(system), mats, one)
    jac = [vals[n + r * n: n + (r + 1) * n] for r in range(n)]
    if n == 1:
        return jac[0][0]
    return determinant(jac, one)


def _delta_matrix(system, mats):
    """Delta(M_X, Y): D x D matrix of polynomials in Y."""
    n = system.nvars
    D = mats[0].shape[0]
    one = MPoly.const(n, 1)
    lifted = [m.map(lambda x: MPoly.const(n, x)) for m in mats]
    ys = [Matrix.scalar(MPoly.var(n, j), D) for j in range(n)]
    return evaluate(pseudo_jacobian(system), lifted + ys, Matrix.identity(D, one))[0]


def trace_data(table, system):
    """Jacobian at the multiplication matrices, its adjugate and Delta(M_X, Y)."""
    for a in table.matrices:
        for b in table.matrices:
            if a * b != b * a:
                raise ValueError("multiplication matrices do not commute")
    J1 = _jacobian_at(system, table.matrices)
    J2, detJ = adjoint_det(J1.rows)
    if detJ == 0:
        raise NotSmoothError("system not smooth")
    return TraceData(table, J1.rows, J2, Fraction(detJ), _delta_matrix(system, table.matrices),
                     system.nvars)


def _trace_against_delta(P, delta, n):
    """Tr(P * delta) for a rational matrix P and a polynomial matrix delta."""
    acc = MPoly(n)
    D = len(P)
    for a in range(D):
        for b in range(D):
            if P[a][b] != 0:
                acc = acc + delta.rows[b][a] * P[a][b]
    return acc


def _matmul(a, b):
    return (Matrix(a) * Matrix(b)).rows


def lift_residue(g, table, system, data=None):
    """Polynomial of degree <= n(d-1) equal to g in B, via the trace formula."""
    data = data or trace_data(table, system)
    G = _at_matrices(g, table.matrices)[0]
    P = _matmul(data.J2, G.rows)
    res = _trace_against_delta(P, data.delta, data.nvars)
    return res * (1 / data.detJ)


def division_step(f, g, table, system, data=None):
    """(theta, q) with q f = theta g in B, theta a nonzero rational.

    q = Tr(adj(F) adj(J) G Delta) and theta = det(F) det(J), with F, G, J
    the values of f, g and the Jacobian at the multiplication matrices.
    """
    data = data or trace_data(table, system)
    F1 = _at_matrices(f, table.matrices)[0]
    F2, detF = adjoint_det(F1.rows)
    if detF == 0:
        raise ZeroDivisorError("f is a zero-divisor in B")
    G1 = _at_matrices(g, table.matrices)[0]
    P = _matmul(_matmul(F2, data.J2), G1.rows)
    q = _trace_against_delta(P, data.delta, data.nvars)
    theta = Fraction(detF) * data.detJ
    qm = _mpoly_at(q, table.matrices)
    if qm * F1 != G1 * theta:
        raise NotDivisibleError("f does not divide g in B")
    return theta, q


def _mpoly_at(p, mats):
    """Dense polynomial evaluated at commuting matrices."""
    D = mats[0].shape[0]
    one = Matrix.identity(D, Fraction(1))
    acc = one * 0
    cache = {}
    for e, c in p.terms.items():
        term = one * c
        for j, k in enumerate(e):
            if k:
                key = (j, k)
                if key not in cache:
                    cache[key] = mats[j] ** k
                term = term * cache[key]
        acc = acc + term
    return acc


@dataclass
class BezoutWitness:
    """a - g * f_{n+1} lies in the ideal (f_1..f_n), with a = alpha^N rho^M extra theta."""
    a: int
    g: MPoly
    N: int
    M: int
    extra: int
    theta: Fraction

    def to_dict(self):
        return {"a": str(self.a),
                "g": {",".join(str(k) for k in e): str(c) for e, c in sorted(self.g.terms.items())},
                "N": self.N, "M": self.M, "extra": str(self.extra)}

    def to_json(self):
        return json.dumps(self.to_dict())


def _exponent_to_absorb(den, base):
    """Smallest N with den / gcd(den, base^N) coprime to base."""
    if abs(base) <= 1:
        return 0
    N = 0
    rest = den
    while gcd(rest, base) != 1:
        N += 1
        rest = den // gcd(den, base ** N)
    return N


def bezout_witness(resolution, f_next, system):
    """Integer a != 0 and integral g with a = g * f_next modulo f_1..f_n."""
    table = mult_table_from_resolution(resolution)
    F1 = _at_matrices(f_next, table.matrices)[0]
    if determinant(F1.rows) == 0:
        raise ConsistentSystemError("system is consistent: no witness exists")
    one = _one_slp(system.nvars)
    theta, q = division_step(f_next, one, table, system)
    den = theta.denominator
    for c in q.terms.values():
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    alpha = resolution.q[-1]
    rho = 1
    for r in resolution.rho:
        rho *= r
    N = _exponent_to_absorb(den, alpha)
    rest = den // gcd(den, abs(alpha) ** N)
    M = _exponent_to_absorb(rest, rho)
    extra = rest // gcd(rest, abs(rho) ** M)
    s = Fraction(alpha) ** N * Fraction(rho) ** M * extra
    a = theta * s
    g = q * s
    if a < 0:
        a, g = -a, g * -1
    assert a.denominator == 1 and all(Fraction(c).denominator == 1 for c in g.terms.values())
    g = MPoly(g.nvars, {e: int(c) for e, c in g.terms.items()})
    lhs = _mpoly_at(g, table.matrices) * F1
    if lhs != Matrix.identity(table.dim, Fraction(1)) * a:
        raise NotDivisibleError("witness identity failed")
    return BezoutWitness(int(a), g, N, M, extra, theta)


def _one_slp(n):
    b = SlpBuilder(n)
    return b.build([b.const(1)])

