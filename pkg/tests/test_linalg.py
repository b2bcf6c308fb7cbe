import random

import pytest

from geosolve.exact import TruncSeries, UniPoly
from geosolve.linalg import (Matrix, NotPrimitiveError, adjoint_det, berkowitz_charpoly,
                             companion, cyclic_solve, determinant, mat_vec)
from oracles import charpoly_oracle, leibniz_det


def test_charpoly_examples():
    assert berkowitz_charpoly([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == UniPoly([-1, 3, -3, 1])
    assert berkowitz_charpoly([[0, 1], [1, 0]]) == UniPoly([-1, 0, 1])
    assert berkowitz_charpoly([[2]]) == UniPoly([-2, 1])


def test_charpoly_against_leibniz():
    rng = random.Random(21)
    for _ in range(60):
        N = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(N)] for _ in range(N)]
        assert list(berkowitz_charpoly(M).coeffs) == charpoly_oracle(M)


def test_adjoint_examples():
    assert adjoint_det([[1, 0], [0, 1]]) == ([[1, 0], [0, 1]], 1)
    assert adjoint_det([[1, 2], [3, 4]]) == ([[4, -2], [-3, 1]], -2)


def test_adjoint_identity_random():
    rng = random.Random(5)
    for _ in range(30):
        M = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        adj, det = adjoint_det(M)
        assert det == leibniz_det(M) == determinant(M)
        assert (Matrix(M) * Matrix(adj)).rows == Matrix.identity(3, det).rows


def test_charpoly_over_series_ring():
    # entries 1 + t and t: the determinant is a series identity
    one = TruncSeries.constant(1, 3, 1)
    t = TruncSeries.variable(1, 3, 0)
    M = [[one + t, t], [t, one]]
    det = determinant(M, one)
    assert det.terms == {(0,): 1, (1,): 1, (2,): -1}


@pytest.mark.parametrize("q, C", [
    ([1, 1, 1], [[0, -1], [1, -1]]),
    ([-3, 1], [[3]]),
])
def test_companion(q, C):
    assert companion(UniPoly(q)) == C


def test_companion_round_trip():
    assert berkowitz_charpoly(companion(UniPoly([0, -1, 1]))) == UniPoly([0, -1, 1])


def test_cyclic_solve_examples():
    M = companion(UniPoly([1, 1, 1]))
    e = [1, 0]
    assert cyclic_solve(M, e, mat_vec(M, e)) == [0, 1]
    assert cyclic_solve(M, e, e) == [1, 0]
    assert cyclic_solve(M, e, mat_vec(M, mat_vec(M, e))) == [-1, -1]


def test_cyclic_solve_not_primitive():
    with pytest.raises(NotPrimitiveError):
        cyclic_solve([[1, 0], [0, 1]], [1, 0], [0, 1])
