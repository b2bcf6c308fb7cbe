import random
from fractions import Fraction
from itertools import product

import pytest

from geosolve.errors import EmptyFiberError, NotRegularError
from geosolve.fiber import GeometricResolution, LiftingFiber, validate_resolution
from geosolve.newton import lift_fiber
from geosolve.slp import evaluate, parse_poly, parse_system
from geosolve.solver import (check_lifting_point, decide_consistency, intersect_with_hypersurface,
                             reduce_system, solve_system)
from corpus import boolean, chain
from oracles import boolean_consistent

XY = ["X1", "X2"]


def points_of(res):
    """Rational points of a resolution whose q splits into integer-free linear factors."""
    import flint
    pts = []
    for root, _ in flint.fmpz_poly(list(res.q)).factor()[1]:
        assert root.degree() == 1
        t = Fraction(-int(root.coeffs()[0]), int(root.coeffs()[1]))
        pts.append(tuple(sum(Fraction(c) * t ** k for k, c in enumerate(v)) / r
                         for r, v in zip(res.rho, res.v)))
    return sorted(pts)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chain_has_two_points(n):
    sol = solve_system(chain(n))
    assert sol.resolution.degree == 2
    assert validate_resolution(sol.resolution, chain(n)).ok


def test_boolean_square_enumerates_corners():
    sol = solve_system(boolean(2))
    assert sol.resolution.degree == 4
    assert points_of(sol.resolution) == sorted(product((0, 1), repeat=2))


def test_inconsistent_pair_reports_empty_fiber():
    with pytest.raises(EmptyFiberError, match="empty fiber at level 2"):
        solve_system(parse_system(["X1^2", "X1-1"], XY))


def test_random_dense_systems_validate():
    rng = random.Random(1)
    for _ in range(3):
        eqs = []
        for _ in range(2):
            terms = ["(%d)*X1^%d*X2^%d" % (rng.randint(-4, 4), i, j)
                     for i in range(3) for j in range(3 - i)]
            eqs.append("+".join(terms))
        system = parse_system(eqs, XY)
        try:
            sol = solve_system(system, seed=rng.randint(0, 99))
        except EmptyFiberError:
            continue
        assert validate_resolution(sol.resolution, system).ok


def test_seed_determinism():
    a = solve_system(boolean(3), seed=5).resolution
    b = solve_system(boolean(3), seed=5).resolution
    assert a == b


@pytest.mark.parametrize("k, expected", [(5, False), (3, True), (0, True)])
def test_boolean_consistency_n2(k, expected):
    assert decide_consistency(boolean(2, k)).consistent is expected


def test_consistency_determinant():
    v = decide_consistency(parse_system(["X1^2-X1", "X1-2"], ["X1"]))
    assert not v.consistent
    assert v.determinant == 2


def test_consistency_matches_enumeration_small():
    for n in (1, 2, 3):
        for k in range(2 ** (n + 1) + 1):
            assert decide_consistency(boolean(n, k)).consistent == boolean_consistent(n, k)


def test_consistent_certificate_contains_common_zero():
    v = decide_consistency(boolean(3, 7))
    assert v.consistent
    assert points_of(v.common_zeros) == [(1, 1, 1)]


def test_reduce_system():
    s = parse_system(["X1", "X1-1"], ["X1"])
    assert reduce_system(s) is s
    s = parse_system(["X1", "X1-1", "X1+1"], ["X1"])
    r = reduce_system(s, seed=3)
    assert len(r.outputs) == 2
    # the variety stays empty: the two combinations have no common root
    a, b = [evaluate(r.select([i]), [0])[0] for i in range(2)]
    slopes = [evaluate(r.select([i]), [1])[0] - v for i, v in enumerate((a, b))]
    assert a * slopes[1] != b * slopes[0]


def square_root_curve():
    fib = LiftingFiber(1, ((1, 0), (0, 1)), (1,), GeometricResolution([1], [-1, 0, 1], [1], [[0, 1]]))
    return lift_fiber(fib, parse_poly("X2^2-X1", XY), 2)


def test_intersection_with_line():
    res = intersect_with_hypersurface(square_root_curve(), parse_poly("X2-3", XY))
    assert res.degree == 1
    assert points_of(res) == [(9, 3)]


def test_intersection_with_same_hypersurface_is_rejected():
    with pytest.raises(NotRegularError, match="not a regular sequence"):
        intersect_with_hypersurface(square_root_curve(), parse_poly("X2^2-X1", XY))


def test_intersection_builds_chain_fiber():
    fib = LiftingFiber(1, ((1, 0), (0, 1)), (1,), GeometricResolution([1], [-1, 1], [1], [[1]]))
    curve = lift_fiber(fib, parse_poly("X2-X1^2", XY), 2)
    res = intersect_with_hypersurface(curve, parse_poly("X1^2+X1+1", XY))
    assert res.degree == 2
    assert validate_resolution(res, chain(2)).ok


def test_lifting_point_check():
    g = parse_poly("X1^2-9", ["X1"])
    assert check_lifting_point(GeometricResolution([1], [-9, 0, 1], [1], [[0, 1]]), g)
    assert not check_lifting_point(GeometricResolution([1], [0, 0, 1], [1], [[0, 1]]),
                                   parse_poly("X1^2", ["X1"]))
