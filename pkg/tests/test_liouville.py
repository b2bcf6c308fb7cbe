import math
from fractions import Fraction

import pytest

from corpus import chain
from geosolve.duality import bezout_witness
from geosolve.fiber import GeometricResolution
from geosolve.liouville import (ApproximationQuery, Interval, build_separating_polynomial,
                                certified_denominator_bound, norm_denominator_bounds,
                                real_root_intervals)
from geosolve.slp import parse_system, to_mpoly
from geosolve.solver import solve_system
from sqrt2 import convergents, epsilon_upper, sqrt2_enclosure

SQRT2 = parse_system(["X^2-2"], ["X"])


def dense(p):
    return {e: Fraction(c) for e, c in p.terms.items() if c != 0}


def sqrt2_resolution():
    return solve_system(SQRT2).resolution


def test_norm_bounds_chain():
    res = GeometricResolution([1, 0], [1, 1, 1], [1, 1], [[0, 1], [-1, -1]])
    dv, log_norm = norm_denominator_bounds(res)
    assert dv == 1
    # sqrt(2) * 2 * 2^2: log2 is 3.5 up to upward rounding
    assert Fraction(7, 2) <= log_norm < Fraction(7, 2) + Fraction(1, 10 ** 6)
    # both points have norm sqrt(2)
    assert math.log2(math.sqrt(2)) <= log_norm


def test_norm_bounds_single_point():
    dv, _ = norm_denominator_bounds(GeometricResolution([1], [-1, 2], [2], [[1]]))
    assert dv == 2


@pytest.mark.parametrize("p, q, want", [
    (7, 5, {(2,): 25, (1,): -70, (0,): 49}),
    ((0, 1), 1, {(2,): 1, (0,): 1}),
    (0, 1, {(2,): 1}),
])
def test_separating_polynomial(p, q, want):
    assert dense(to_mpoly(build_separating_polynomial(p, q))[0]) == want


def test_query_validation():
    res = sqrt2_resolution()
    with pytest.raises(ValueError):
        ApproximationQuery(res, SQRT2, 7, 5, 2)
    with pytest.raises(ValueError):
        ApproximationQuery(res, SQRT2, 7, 0, Fraction(1, 2))


def test_real_root_intervals():
    ivs = real_root_intervals([-2, 0, 1], bits=30)
    assert len(ivs) == 2
    lo, hi = sqrt2_enclosure(40)
    assert ivs[1].lo <= hi and lo <= ivs[1].hi
    assert ivs[1].hi - ivs[1].lo <= Fraction(1, 1 << 30)
    assert real_root_intervals([1, 0, 1]) == []
    ivs = real_root_intervals([0, -1, 1])
    assert len(ivs) == 2
    assert ivs[0].lo <= 0 <= ivs[0].hi < ivs[1].lo <= 1 <= ivs[1].hi


def test_bound_for_seven_fifths_is_sound():
    rep = certified_denominator_bound(ApproximationQuery(sqrt2_resolution(), SQRT2, 7, 5,
                                                         Fraction(1, 64)))
    assert rep.bound <= Fraction(math.log2(5))
    assert rep.trace and "log2 q >=" in rep.trace[-1]
    d = rep.to_dict()
    assert all(isinstance(v, str) for k, v in d.items() if k != "trace")


def test_epsilon_one_is_vacuous():
    rep = certified_denominator_bound(ApproximationQuery(sqrt2_resolution(), SQRT2, 7, 5, 1))
    assert rep.bound <= 0


def test_monotone_in_epsilon():
    res = sqrt2_resolution()
    w = bezout_witness(res, build_separating_polynomial(41, 29), SQRT2)
    bounds = [certified_denominator_bound(ApproximationQuery(res, SQRT2, 41, 29,
                                                             Fraction(1, 2 ** k)), w).bound
              for k in range(0, 40, 5)]
    assert all(a < b for a, b in zip(bounds, bounds[1:]))


def test_convergents_are_respected():
    res = sqrt2_resolution()
    for p, q in convergents(10 ** 4):
        rep = certified_denominator_bound(ApproximationQuery(res, SQRT2, p, q, epsilon_upper(p, q)))
        assert rep.bound <= Fraction(math.log2(q))


def test_witness_inequality_with_intervals():
    # |g(alpha)| |q alpha - p|^2 equals the witness integer a at each root
    res = sqrt2_resolution()
    for p, q in convergents(1000):
        w = bezout_witness(res, build_separating_polynomial(p, q), SQRT2)
        for iv in real_root_intervals(res.q, bits=200):
            alpha = Interval(iv.lo, iv.hi)
            g = Interval(0)
            for (k,), c in w.g.terms.items():
                term = Interval(c)
                for _ in range(k):
                    term = term * alpha
                g = g + term
            lin = alpha * q - p
            b = g * lin * lin
            assert b.lo <= w.a <= b.hi
            assert w.a >= 1 and min(abs(b.lo), abs(b.hi)) > Fraction(1, 2)


def test_chain_n3_bound_against_n_squared():
    # At eps = 2^-8 no sound evaluation can exceed 9: |g(alpha)| >= 1/|alpha_1 - 1|^2 = 1/3
    # and |alpha| = sqrt(3) give at most (8 + log2 3 - log2(2 sqrt(3) + 1)) / 2 < 4.
    s = chain(3)
    res = solve_system(s).resolution
    ceiling = (8 + math.log2(3) - math.log2(2 * math.sqrt(3) + 1)) / 2
    low = certified_denominator_bound(ApproximationQuery(res, s, 1, 1, Fraction(1, 2 ** 8)))
    assert low.bound <= ceiling < 9
    high = certified_denominator_bound(ApproximationQuery(res, s, 1, 1, Fraction(1, 2 ** 64)))
    assert high.bound > 9


def test_chain_bound_grows_with_precision():
    s = chain(3)
    res = solve_system(s).resolution
    small = certified_denominator_bound(ApproximationQuery(res, s, 1, 1, Fraction(1, 2 ** 8)))
    large = certified_denominator_bound(ApproximationQuery(res, s, 1, 1, Fraction(1, 2 ** 64)))
    assert large.bound > small.bound
    assert "^C" in large.symbolic


def test_seven_fifths_at_one_sixty_fourth_cannot_be_positive():
    # Any witness has |g(alpha)| |5 alpha - 7|^2 = a >= 1 at alpha = sqrt(2),
    # so log2 |g(alpha)| >= -2 log2 |5 sqrt(2) - 7| > 7.6 > -log2(1/64) = 6:
    # the chain bound (6 - log2|g| - log2(2|V| + 1)) / 2 is negative for every witness.
    assert -2 * math.log2(abs(5 * math.sqrt(2) - 7)) > 7.6
    rep = certified_denominator_bound(ApproximationQuery(sqrt2_resolution(), SQRT2, 7, 5,
                                                         Fraction(1, 64)))
    assert rep.log2_value_bound > 6
    assert rep.bound < 0
