"""Continued-fraction convergents of sqrt(2) and certified distance bounds."""
from fractions import Fraction
from math import isqrt


def convergents(limit):
    """(p, q) convergents of sqrt(2) with q <= limit."""
    out = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    a = 1
    while True:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > limit:
            return out
        out.append((h1, k1))
        a = 2


def sqrt2_enclosure(bits):
    """Rational lo < sqrt(2) < hi with hi - lo = 2^-bits, checked by squaring."""
    lo = Fraction(isqrt(2 << (2 * bits)), 1 << bits)
    hi = lo + Fraction(1, 1 << bits)
    assert lo * lo < 2 < hi * hi
    return lo, hi


def epsilon_upper(p, q):
    """Rational eps >= 2 |p/q - sqrt(2)|, capped at 1."""
    lo, hi = sqrt2_enclosure(2 * q.bit_length() + 40)
    x = Fraction(p, q)
    return min(Fraction(1), 2 * max(abs(x - lo), abs(x - hi)))
