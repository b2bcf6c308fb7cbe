"""Independent reference implementations used only by the tests.

Nothing here imports the package: polynomials are plain dicts mapping
exponent tuples to Fractions, matrices are lists of lists.
"""
from fractions import Fraction
from itertools import permutations, product


# ---------------------------------------------------------------- dense polys

def padd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def pscale(a, s):
    return {e: c * s for e, c in a.items() if c * s != 0}


def pmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def pconst(n, c):
    return {(0,) * n: Fraction(c)} if c else {}


def pvar(n, i):
    return {tuple(1 if k == i else 0 for k in range(n)): Fraction(1)}


def ppow(a, k, n):
    out = pconst(n, 1)
    for _ in range(k):
        out = pmul(out, a)
    return out


def pdeg(a):
    return max((sum(e) for e in a), default=-1)


def peval(a, point):
    acc = 0
    for e, c in a.items():
        t = c
        for x, k in zip(point, e):
            t = t * x ** k
        acc = acc + t
    return acc


def parse_dense(text, names):
    """Dense polynomial from an expression with + - * ^ and integers."""
    n = len(names)
    env = {name: pvar(n, i) for i, name in enumerate(names)}
    tokens = _tokens(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        pos[0] += 1
        return tokens[pos[0] - 1]

    def expr():
        acc = term()
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = padd(acc, t if op == "+" else pscale(t, -1))
        return acc

    def term():
        acc = unary()
        while peek() == "*":
            take()
            acc = pmul(acc, unary())
        return acc

    def unary():
        if peek() == "-":
            take()
            return pscale(unary(), -1)
        return power()

    def power():
        base = atom()
        if peek() == "^":
            take()
            return ppow(base, int(take()), n)
        return base

    def atom():
        t = take()
        if t == "(":
            v = expr()
            take()
            return v
        if t.isdigit():
            return pconst(n, int(t))
        return env[t]

    out = expr()
    assert pos[0] == len(tokens)
    return out


def _tokens(text):
    out, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(text[i:j])
            i = j
        else:
            out.append(ch)
            i += 1
    return out


# ---------------------------------------------------------------- normal form

def normal_form_pure_powers(g, system, degrees):
    """Remainder of g modulo f_i = X_i^d_i + (lower degree terms).

    The leading terms are coprime pure powers, so the f_i form a Groebner
    basis for any degree ordering and the remainder is the unique normal
    form with every exponent e_i < d_i.
    """
    n = len(degrees)
    tails = []
    for i, (f, d) in enumerate(zip(system, degrees)):
        lead = tuple(d if k == i else 0 for k in range(n))
        assert f.get(lead) == 1
        tail = {e: -c for e, c in f.items() if e != lead}
        assert pdeg(tail) < d
        tails.append(tail)
    g = dict(g)
    out = {}
    while g:
        e = max(g, key=lambda x: (sum(x), x))
        c = g.pop(e)
        i = next((k for k in range(n) if e[k] >= degrees[k]), None)
        if i is None:
            out[e] = out.get(e, 0) + c
            if out[e] == 0:
                del out[e]
            continue
        rest = tuple(x - (degrees[i] if k == i else 0) for k, x in enumerate(e))
        g = padd(g, pmul({rest: c}, tails[i]))
    return out


# ---------------------------------------------------------------- determinants

def _sign(perm):
    s, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, k = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            if k % 2 == 0:
                s = -s
    return s


def leibniz_det(M, zero=0, one=1, add=None, mul=None):
    """Determinant by the permutation expansion over any ring."""
    add = add or (lambda a, b: a + b)
    mul = mul or (lambda a, b: a * b)
    N = len(M)
    total = zero
    for perm in permutations(range(N)):
        t = one
        for i in range(N):
            t = mul(t, M[i][perm[i]])
        if _sign(perm) < 0:
            t = mul(t, -1)
        total = add(total, t)
    return total


def charpoly_oracle(M):
    """Coefficients (low to high) of det(t I - M) by Leibniz at N+1 points."""
    N = len(M)
    xs = list(range(N + 1))
    ys = [leibniz_det([[Fraction(x if i == j else 0) - M[i][j] for j in range(N)]
                       for i in range(N)]) for x in xs]
    return lagrange(xs, ys)


def lagrange(xs, ys):
    """Coefficients of the interpolating polynomial (low to high)."""
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j != i:
                basis = [a - xs[j] * b for a, b in zip([Fraction(0)] + basis, basis + [Fraction(0)])]
                den *= xs[i] - xs[j]
        for k in range(n):
            out[k] += ys[i] * basis[k] / den
    return out


# ---------------------------------------------------------------- resultants

def sylvester_resultant(f, g, var, n):
    """Res_var(f, g) of dense polynomials, by Leibniz on the Sylvester matrix."""
    fc = _coeffs_in(f, var, n)
    gc = _coeffs_in(g, var, n)
    m, k = len(fc) - 1, len(gc) - 1
    size = m + k
    rows = []
    for i in range(k):
        rows.append([{}] * i + list(reversed(fc)) + [{}] * (size - m - 1 - i))
    for i in range(m):
        rows.append([{}] * i + list(reversed(gc)) + [{}] * (size - k - 1 - i))
    return leibniz_det(rows, zero={}, one=pconst(n, 1), add=padd,
                       mul=lambda a, b: pscale(a, b) if not isinstance(b, dict) else pmul(a, b))


def _coeffs_in(f, var, n):
    deg = max(e[var] for e in f)
    out = [{} for _ in range(deg + 1)]
    for e, c in f.items():
        rest = tuple(0 if i == var else x for i, x in enumerate(e))
        out[e[var]] = padd(out[e[var]], {rest: c})
    return out


# ---------------------------------------------------------------- univariate

def euclid_gcd(a, b):
    """Monic gcd of coefficient lists (low to high) over Q."""
    a = _strip([Fraction(x) for x in a])
    b = _strip([Fraction(x) for x in b])
    while b:
        a, b = b, _rem(a, b)
    if not a:
        return []
    return [c / a[-1] for c in a]


def _strip(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _rem(a, b):
    a = list(a)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        for i, x in enumerate(b):
            a[s + i] -= c * x
        _strip(a)
    return a


def boolean_consistent(n, k):
    """k is a sum of distinct powers 2^0..2^(n-1), by enumeration."""
    return any(sum(b << i for i, b in enumerate(bits)) == k
               for bits in product((0, 1), repeat=n))
