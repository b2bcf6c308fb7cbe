import random
from fractions import Fraction

import pytest

from geosolve.exact import (ModPoly, TruncSeries, UniPoly, content_primitive, height,
                            inverse_mod, log2_lower, log2_upper, poly_gcd, series_invert)
from oracles import euclid_gcd


def test_height_examples():
    assert height(8) == 3
    assert height(1) == 1
    assert height(0) == 1
    assert height(UniPoly([1, 1, 1])) == 1


def test_log_bounds_bracket_true_value():
    import math
    for x in [3, 5, Fraction(7, 3), Fraction(1, 64), 10 ** 30 + 7]:
        assert log2_lower(x) <= math.log2(x) <= log2_upper(x)
    assert log2_upper(8) >= 3 and log2_lower(8) <= 3


@pytest.mark.parametrize("coeffs, content, prim", [
    ([4, 2], 2, [2, 1]),
    ([1, 1, 1], 1, [1, 1, 1]),
    ([0, -3], 3, [0, 1]),
])
def test_content_primitive(coeffs, content, prim):
    c, p = content_primitive(UniPoly(coeffs))
    assert c == content
    assert p == UniPoly(prim)


def test_series_invert_constant():
    assert series_invert(TruncSeries.constant(1, 3, 2)).terms == {(0,): Fraction(1, 2)}


def test_series_invert_geometric():
    inv = series_invert(TruncSeries(1, 2, {(0,): 1, (1,): 1}))
    assert inv.terms == {(0,): 1, (1,): -1, (2,): 1}


def test_series_invert_two_variables():
    s = TruncSeries(2, 2, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    inv = series_invert(s)
    assert inv.terms == {(0, 0): 1, (1, 0): -1, (0, 1): -1, (2, 0): 1, (1, 1): 2, (0, 2): 1}
    prod = s * inv
    assert prod.terms == {(0, 0): 1}


def test_series_invert_rejects_nonunit():
    with pytest.raises(ZeroDivisionError):
        series_invert(TruncSeries(1, 2, {(1,): 1}))


def test_gcd_examples():
    assert poly_gcd(UniPoly([-1, 0, 1]), UniPoly([-1, 1])) == UniPoly([-1, 1])
    assert poly_gcd(UniPoly([1, 1, 1]), UniPoly([1, 2])) == UniPoly([1])
    assert poly_gcd(UniPoly([2, 4]), UniPoly([])) == UniPoly([Fraction(1, 2), 1])


def test_gcd_against_euclid_oracle():
    rng = random.Random(11)
    for _ in range(500):
        common = [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
        a = _mul([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))], common)
        b = _mul([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))], common)
        if not any(a) and not any(b):
            continue
        got = poly_gcd(UniPoly(a), UniPoly(b))
        want = euclid_gcd(a, b)
        assert list(got.coeffs) == want if want else got.is_zero()


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_inverse_mod_small_and_large():
    import flint
    rng = random.Random(3)
    for D in (3, 20):
        m = flint.fmpq_poly([rng.randint(-5, 5) for _ in range(D)] + [1])
        while m.gcd(m.derivative()).degree() > 0:
            m = flint.fmpq_poly([rng.randint(-5, 5) for _ in range(D)] + [1])
        a = flint.fmpq_poly([rng.randint(-5, 5) for _ in range(D)])
        if a.gcd(m).degree() > 0:
            continue
        inv = inverse_mod(a, m)
        assert (inv * a) % m == 1


def test_gcd_of_zeros_is_an_error():
    with pytest.raises(ValueError):
        poly_gcd(UniPoly([]), UniPoly([]))


def test_modpoly_zero_divisor():
    import flint
    m = flint.fmpq_poly([0, -1, 1])
    x = ModPoly(flint.fmpq_poly([0, 1]), m)
    assert not x.is_unit()
    with pytest.raises(ZeroDivisionError):
        x.inverse()
