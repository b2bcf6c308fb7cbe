"""Division-free linear algebra over commutative rings.

Square matrices are passed around as lists of rows.  Entries may be
integers, rationals, truncated series, flint polynomials, SLP expressions or
``Matrix`` objects (commuting blocks); the only requirement is ``+``, ``-``,
``*`` and a multiplicative identity.
"""
from .exact import UniPoly, is_zero, ring_inverse, ring_one, ring_zero, rsum, scale


class NotPrimitiveError(ArithmeticError):
    """The Krylov basis of a cyclic solve is dependent."""


class Matrix:
    """Rectangular matrix usable as an element of a (commutative) matrix ring."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]

    @classmethod
    def identity(cls, n, one=1):
        zero = ring_zero(one)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, c, n):
        zero = ring_zero(c)
        return cls([[c if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def one(self):
        return Matrix.identity(len(self.rows), ring_one(self.rows[0][0]))

    def zero(self):
        z = ring_zero(self.rows[0][0])
        return Matrix([[z] * len(r) for r in self.rows])

    def is_zero(self):
        return all(is_zero(x) for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            if other == 0:
                return self.is_zero()
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self):
        return "Matrix(%r)" % (self.rows,)

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self.rows])

    def __add__(self, other):
        if not isinstance(other, Matrix):
            other = Matrix.scalar(other, len(self.rows))
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            other = Matrix.scalar(other, len(self.rows))
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return _matmul(self, other)
        return Matrix([[x * other for x in r] for r in self.rows])

    def __rmul__(self, other):
        return Matrix([[other * x for x in r] for r in self.rows])

    def scale(self, s):
        return Matrix([[scale(s, x) for x in r] for r in self.rows])

    def __pow__(self, k):
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, vec):
        return [rsum((a * b for a, b in zip(r, vec)), ring_zero(vec[0])) for r in self.rows]

    def trace(self):
        return rsum(self.rows[i][i] for i in range(len(self.rows)))

    def transpose(self):
        return Matrix([list(c) for c in zip(*self.rows)])

    def map(self, fn):
        return Matrix([[fn(x) for x in r] for r in self.rows])


def _matmul(a, b):
    m = len(b.rows[0])
    zero = ring_zero(a.rows[0][0])
    out = []
    for r in a.rows:
        row = []
        for j in range(m):
            acc = None
            for k, x in enumerate(r):
                if is_zero(x):
                    continue
                y = b.rows[k][j]
                if is_zero(y):
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            row.append(zero if acc is None else acc)
        out.append(row)
    return Matrix(out)


def _rows(M):
    return M.rows if isinstance(M, Matrix) else [list(r) for r in M]


def _one_of(rows, one):
    if one is not None:
        return one
    return ring_one(rows[0][0])


def berkowitz_charpoly(M, one=None):
    """Characteristic polynomial det(T*Id - M) by the Samuelson-Berkowitz recurrence.

    Only ring additions and multiplications are used (the recurrence's
    constants are -1, 0 and 1), so any commutative ring works.  Returns a
    monic UniPoly, coefficients low to high.
    """
    rows = _rows(M)
    n = len(rows)
    if n == 0:
        return UniPoly([one if one is not None else 1])
    one = _one_of(rows, one)
    # coefficient vector, highest degree first, for the trailing principal block
    vec = [one, -rows[n - 1][n - 1]]
    for r in range(n - 2, -1, -1):
        m = n - r
        col = [rows[i][r] for i in range(r + 1, n)]
        row = rows[r][r + 1:]
        sub = [rows[i][r + 1:] for i in range(r + 1, n)]
        toep = [one, -rows[r][r]]
        v = col
        for k in range(m - 1):
            toep.append(-rsum(a * b for a, b in zip(row, v)))
            if k < m - 2:
                v = [rsum(a * b for a, b in zip(srow, v)) for srow in sub]
        new = []
        for i in range(m + 1):
            terms = [toep[i - j] * vec[j] for j in range(min(i, m - 1) + 1)]
            new.append(rsum(terms))
        vec = new
    return UniPoly(list(reversed(vec)))


def determinant(M, one=None):
    rows = _rows(M)
    n = len(rows)
    if n == 0:
        return one if one is not None else 1
    c0 = berkowitz_charpoly(rows, one).coeffs
    c0 = c0[0] if c0 else ring_zero(_one_of(rows, one))
    return c0 if n % 2 == 0 else -c0


def _mat_mul(a, b):
    n = len(a)
    return [[rsum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def adjoint_det(M, one=None):
    """Adjugate and determinant from the characteristic polynomial.

    With charpoly c_0 + c_1 T + ... + T^N, Cayley-Hamilton gives
    M * Adj = det * Id for Adj = (-1)^(N+1) * sum_{k>=1} c_k M^(k-1).
    """
    rows = _rows(M)
    n = len(rows)
    one = _one_of(rows, one)
    zero = ring_zero(one)
    cp = berkowitz_charpoly(rows, one)
    c = [cp[k] if k < len(cp) else zero for k in range(n + 1)]
    det = c[0] if n % 2 == 0 else -c[0]

    def diag(x):
        return [[x if i == j else zero for j in range(n)] for i in range(n)]

    acc = diag(c[n])
    for k in range(n - 1, 0, -1):
        acc = _mat_mul(acc, rows)
        for i in range(n):
            acc[i][i] = acc[i][i] + c[k]
    if n % 2 == 0:
        acc = [[-x for x in r] for r in acc]
    return acc, det


def companion(q):
    """Companion matrix of a monic polynomial: ones below the diagonal,
    negated low coefficients in the last column."""
    q = q if isinstance(q, UniPoly) else UniPoly(q)
    d = q.degree()
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if q.lc() != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    rows = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i + 1][i] = 1
    for i in range(d):
        rows[i][d - 1] = -q[i]
    return rows


def mat_vec(M, v):
    rows = _rows(M)
    return [rsum(a * b for a, b in zip(r, v)) for r in rows]


def cyclic_solve(M, e, w, one=None):
    """Coordinates c with sum c_i M^i e = w.

    The Krylov matrix is inverted through its adjugate, so the only division
    is by its determinant, which must be a unit of the ring.
    """
    rows = _rows(M)
    n = len(rows)
    cols = [list(e)]
    for _ in range(n - 1):
        cols.append(mat_vec(rows, cols[-1]))
    krylov = [[cols[j][i] for j in range(n)] for i in range(n)]
    adj, det = adjoint_det(krylov, one)
    try:
        inv = ring_inverse(det)
    except ZeroDivisionError:
        raise NotPrimitiveError("element not primitive") from None
    return [x * inv for x in mat_vec(adj, w)]
