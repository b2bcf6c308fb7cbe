"""Certified denominator bounds for the convergents of sqrt 2.

Each convergent p/q is paired with the dyadic epsilon just above its
distance to sqrt 2.  The certified bound never exceeds log2 q.  It stays
small because the witness g grows like 1/(q sqrt 2 - p)^2 near the root.
"""
from fractions import Fraction
from math import log2

from mpmath import mp, mpf, sqrt

from geosolve import (ApproximationQuery, bezout_witness, build_separating_polynomial,
                      certified_denominator_bound, parse_system, solve_system)

mp.prec = 200
system = parse_system(["X1^2 - 2"], ["X1"])
res = solve_system(system).resolution

p, q = 1, 1
for _ in range(10):
    p, q = p + 2 * q, p + q
    dist = abs(mpf(p) / q - sqrt(2))
    k = int(-mp.log(dist, 2))
    eps = Fraction(1, 2 ** k)
    w = bezout_witness(res, build_separating_polynomial(p, q, 1), system)
    report = certified_denominator_bound(ApproximationQuery(res, system, p, q, eps), w)
    print("%6d/%-6d eps = 2^-%-3d log2 q = %5.2f  certified bound %6.2f"
          % (p, q, k, log2(q), float(report.bound)))
