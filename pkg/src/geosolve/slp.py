"""Straight-line programs in the "linear combination times linear combination" form.

Reference 0 is the constant 1, references 1..n are the input variables and
reference n+1+k is the k-th multiplication gate.  Additions and scalar
multiples live inside linear combinations, so the size L of a program counts
only its non-scalar multiplications and the depth counts nested ones.
"""
import json
import random
import re
from fractions import Fraction

from .exact import MPoly, height, log2_upper, ring_one, ring_zero, scale
from .linalg import berkowitz_charpoly


class SlpError(ValueError):
    pass


def _norm_scalar(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _lin_key(lin):
    return tuple(sorted(lin.items()))


class Slp:
    """Immutable straight-line program over ``nvars`` inputs."""

    def __init__(self, nvars, gates, outputs, names=None):
        self.nvars = nvars
        self.gates = tuple((tuple(l), tuple(r)) for l, r in gates)
        self.outputs = tuple(tuple(o) for o in outputs)
        self.names = tuple(names) if names else tuple("X%d" % (i + 1) for i in range(nvars))
        top = nvars + 1
        for k, (l, r) in enumerate(self.gates):
            for _, ref in l + r:
                if not 0 <= ref < top + k:
                    raise SlpError("gate %d references a later gate" % k)
        for o in self.outputs:
            for _, ref in o:
                if not 0 <= ref < top + len(self.gates):
                    raise SlpError("output references an unknown gate")

    # ------------------------------------------------------------ metrics
    @property
    def size(self):
        """Number of multiplication gates."""
        return len(self.gates)

    @property
    def graph_size(self):
        """Number of nodes, counting the constant and the inputs.

        Every linear combination has at most this many terms, which is what
        the degree, height and value bounds need.
        """
        return self.nvars + 1 + len(self.gates)

    def _depths(self):
        depth = [0] * (self.nvars + 1 + len(self.gates))
        base = self.nvars + 1
        for k, (l, r) in enumerate(self.gates):
            depth[base + k] = 1 + max([depth[ref] for _, ref in l + r] or [0])
        return depth

    @property
    def depth(self):
        depth = self._depths()
        refs = [ref for o in self.outputs for _, ref in o]
        return max([depth[r] for r in refs] or [0])

    def scalars(self):
        out = []
        for l, r in self.gates:
            out.extend(c for c, _ in l + r)
        for o in self.outputs:
            out.extend(c for c, _ in o)
        return out

    @property
    def param_height(self):
        return height(self.scalars())

    def __len__(self):
        return len(self.outputs)

    def output(self, i):
        """Single-output program for output ``i``."""
        return Slp(self.nvars, self.gates, [self.outputs[i]], self.names)

    def select(self, indices):
        return Slp(self.nvars, self.gates, [self.outputs[i] for i in indices], self.names)

    def depends_on(self):
        """For each output, the set of input indices (0-based) it structurally uses."""
        deps = [frozenset()] + [frozenset([i]) for i in range(self.nvars)]
        for l, r in self.gates:
            s = set()
            for _, ref in l + r:
                s |= deps[ref]
            deps.append(frozenset(s))
        out = []
        for o in self.outputs:
            s = set()
            for _, ref in o:
                s |= deps[ref]
            out.append(s)
        return out

    # ------------------------------------------------------------ serialization
    def to_dict(self):
        gates = [{"kind": "const", "scalars": [], "refs": []}]
        gates += [{"kind": "input", "scalars": [], "refs": [i]} for i in range(self.nvars)]
        for l, r in self.gates:
            gates.append({"kind": "mul",
                          "scalars": [[str(c) for c, _ in l], [str(c) for c, _ in r]],
                          "refs": [[ref for _, ref in l], [ref for _, ref in r]]})
        outs = [{"scalars": [str(c) for c, _ in o], "refs": [ref for _, ref in o]}
                for o in self.outputs]
        return {"variables": list(self.names), "gates": gates, "outputs": outs}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        names = d["variables"]
        gates = []
        for g in d["gates"]:
            if g["kind"] == "mul":
                (ls, rs), (lr, rr) = g["scalars"], g["refs"]
                gates.append(([(_norm_scalar(c), r) for c, r in zip(ls, lr)],
                              [(_norm_scalar(c), r) for c, r in zip(rs, rr)]))
        outs = [[(_norm_scalar(c), r) for c, r in zip(o["scalars"], o["refs"])]
                for o in d["outputs"]]
        return cls(len(names), gates, outs, names)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return "Slp(nvars=%d, L=%d, depth=%d, outputs=%d)" % (
            self.nvars, self.size, self.depth, len(self.outputs))


# ---------------------------------------------------------------- evaluation

def _lin_eval(lin, values, zero):
    acc = None
    for c, ref in lin:
        t = values[ref] if c == 1 else scale(c, values[ref])
        acc = t if acc is None else acc + t
    return zero if acc is None else acc


def evaluate(slp, point, one=None):
    """Run the program on ``point`` in any commutative ring with rational action."""
    if len(point) != slp.nvars:
        raise SlpError("expected %d inputs, got %d" % (slp.nvars, len(point)))
    if one is None:
        one = ring_one(point[0]) if point else 1
    zero = ring_zero(one)
    values = [one] + list(point)
    for l, r in slp.gates:
        values.append(_lin_eval(l, values, zero) * _lin_eval(r, values, zero))
    return [_lin_eval(o, values, zero) for o in slp.outputs]


def to_mpoly(slp):
    """Dense expansion of every output (exact, exponential in the worst case)."""
    n = slp.nvars
    return evaluate(slp, [MPoly.var(n, i) for i in range(n)], MPoly.const(n, 1))


# ---------------------------------------------------------------- builder

class SlpBuilder:
    """Incremental construction; ``Expr`` handles make it a ring."""

    def __init__(self, nvars, names=None):
        self.nvars = nvars
        self.names = names
        self.gates = []
        self._memo = {}

    def const(self, c):
        return Expr(self, {0: _norm_scalar(c)} if c else {})

    def var(self, i):
        return Expr(self, {i + 1: 1})

    def variables(self):
        return [self.var(i) for i in range(self.nvars)]

    def mul(self, a, b):
        if not a.lin or not b.lin:
            return Expr(self, {})
        if a.is_constant():
            return b.scale(a.lin[0])
        if b.is_constant():
            return a.scale(b.lin[0])
        ka, kb = _lin_key(a.lin), _lin_key(b.lin)
        key = (ka, kb) if ka <= kb else (kb, ka)
        ref = self._memo.get(key)
        if ref is None:
            ref = self.nvars + 1 + len(self.gates)
            self.gates.append((tuple((c, r) for r, c in key[0]), tuple((c, r) for r, c in key[1])))
            self._memo[key] = ref
        return Expr(self, {ref: 1})

    def build(self, outputs):
        outs = [tuple((c, r) for r, c in sorted(e.lin.items())) for e in outputs]
        return Slp(self.nvars, self.gates, outs, self.names)


class Expr:
    """A linear combination of gates of one builder; supports ring operations."""

    __slots__ = ("builder", "lin")

    def __init__(self, builder, lin):
        self.builder = builder
        self.lin = {r: c for r, c in lin.items() if c != 0}

    def is_constant(self):
        return all(r == 0 for r in self.lin)

    def is_zero(self):
        return not self.lin

    def one(self):
        return self.builder.const(1)

    def zero(self):
        return self.builder.const(0)

    def _coerce(self, other):
        if isinstance(other, Expr):
            return other
        return self.builder.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.lin)
        for r, c in other.lin.items():
            out[r] = out.get(r, 0) + c
        return Expr(self.builder, out)

    __radd__ = __add__

    def __neg__(self):
        return Expr(self.builder, {r: -c for r, c in self.lin.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s):
        s = _norm_scalar(s)
        return Expr(self.builder, {r: c * s for r, c in self.lin.items()})

    def __mul__(self, other):
        if isinstance(other, Expr):
            return self.builder.mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise SlpError("negative exponent")
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Expr):
            return self.lin == other.lin
        return self.lin == self._coerce(other).lin

    def __hash__(self):
        return hash(_lin_key(self.lin))


def compose(slp, inputs, builder):
    """Evaluate ``slp`` on builder expressions (program substitution)."""
    return evaluate(slp, inputs, builder.const(1))


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SlpError("syntax error at position %d" % pos)
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        val = m.group(1) or m.group(2) or m.group(3)
        if val == "**":
            val = "^"
        out.append((kind, val, m.start(m.lastindex)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, builder, index):
        self.toks = _tokenize(text)
        self.i = 0
        self.b = builder
        self.index = index

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg=None):
        kind, val, pos = self.peek()
        raise SlpError(msg or "syntax error at position %d near %r" % (pos, val))

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            val = self.unary()
            return -val if op == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.peek()
            if kind != "num":
                self.error("exponent must be a nonnegative integer at position %d" % pos)
            self.take()
            return base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return self.b.const(int(val))
        if kind == "name":
            self.take()
            if val not in self.index:
                raise SlpError("unknown variable %r at position %d" % (val, pos))
            return self.b.var(self.index[val])
        if kind == "op" and val == "(":
            self.take()
            e = self.expr()
            if self.peek()[1] != ")":
                self.error()
            self.take()
            return e
        self.error()

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.error()
        return e


def parse_system(exprs, variables):
    """Compile several expressions into one program sharing gates."""
    variables = list(variables)
    if len(set(variables)) != len(variables):
        raise SlpError("variable names must be distinct")
    index = {v: i for i, v in enumerate(variables)}
    b = SlpBuilder(len(variables), variables)
    outs = [_Parser(text, b, index).parse() for text in exprs]
    return b.build(outs)


def parse_poly(expr, variables):
    return parse_system([expr], variables)


# ---------------------------------------------------------------- transforms

def derive_all(slp):
    """Program for all outputs followed by all first partial derivatives.

    Output order: f_1..f_s, then df_1/dX_1..df_1/dX_n, df_2/dX_1, ...
    """
    n = slp.nvars
    b = SlpBuilder(n, slp.names)
    zero = b.const(0)
    val = [b.const(1)] + b.variables()
    der = [[zero] * n] + [[b.const(1) if i == j else zero for j in range(n)] for i in range(n)]

    def lin(l, table):
        acc = zero
        for c, ref in l:
            acc = acc + table[ref] * c
        return acc

    def lin_d(l, j):
        acc = zero
        for c, ref in l:
            acc = acc + der[ref][j] * c
        return acc

    for l, r in slp.gates:
        lv, rv = lin(l, val), lin(r, val)
        val.append(lv * rv)
        der.append([lin_d(l, j) * rv + lv * lin_d(r, j) for j in range(n)])
    outs = [lin(o, val) for o in slp.outputs]
    for o in slp.outputs:
        outs.extend(lin_d(o, j) for j in range(n))
    return b.build(outs)


def homogeneous_components(slp, D):
    """Program whose outputs are the degree-0..D components of each output."""
    n = slp.nvars
    b = SlpBuilder(n, slp.names)
    zero = b.const(0)
    comps = [[b.const(1)] + [zero] * D]
    for i in range(n):
        row = [zero] * (D + 1)
        if D >= 1:
            row[1] = b.var(i)
        comps.append(row)

    def lin(l):
        out = [zero] * (D + 1)
        for c, ref in l:
            for k in range(D + 1):
                if not comps[ref][k].is_zero():
                    out[k] = out[k] + comps[ref][k] * c
        return out

    for l, r in slp.gates:
        lc, rc = lin(l), lin(r)
        row = []
        for k in range(D + 1):
            acc = zero
            for i in range(k + 1):
                if lc[i].is_zero() or rc[k - i].is_zero():
                    continue
                acc = acc + lc[i] * rc[k - i]
            row.append(acc)
        comps.append(row)
    outs = []
    for o in slp.outputs:
        outs.extend(lin(o))
    return b.build(outs)


def divided_differences(slp):
    """Program over (X_1..X_n, Y_1..Y_n) for l_jk with f_j(Y)-f_j(X) = sum_k l_jk (Y_k-X_k).

    Per-gate product rule dd[g*h] = dd[g]*h(Y) + g(X)*dd[h].  Outputs are
    ordered row-major: l_11, l_12, ..., l_1n, l_21, ...
    """
    n = slp.nvars
    names = ["X%d" % (i + 1) for i in range(n)] + ["Y%d" % (i + 1) for i in range(n)]
    b = SlpBuilder(2 * n, names)
    zero, one = b.const(0), b.const(1)
    xs = [one] + [b.var(i) for i in range(n)]
    ys = [one] + [b.var(n + i) for i in range(n)]
    dd = [[zero] * n] + [[one if i == k else zero for k in range(n)] for i in range(n)]

    def lin(l, table):
        acc = zero
        for c, ref in l:
            acc = acc + table[ref] * c
        return acc

    def lin_dd(l, k):
        acc = zero
        for c, ref in l:
            acc = acc + dd[ref][k] * c
        return acc

    for l, r in slp.gates:
        lx, rx, ly, ry = lin(l, xs), lin(r, xs), lin(l, ys), lin(r, ys)
        xs.append(lx * rx)
        ys.append(ly * ry)
        dd.append([lin_dd(l, k) * ry + lx * lin_dd(r, k) for k in range(n)])
    outs = []
    for o in slp.outputs:
        outs.extend(lin_dd(o, k) for k in range(n))
    return b.build(outs)


def determinant_slp(slp, size):
    """Single-output program for det of the size x size matrix of outputs (row-major)."""
    b = SlpBuilder(slp.nvars, slp.names)
    vals = compose(slp, b.variables(), b)
    mat = [vals[i * size:(i + 1) * size] for i in range(size)]
    cp = berkowitz_charpoly(mat, b.const(1))
    det = cp[0] if size % 2 == 0 else -cp[0]
    return b.build([det])


# ---------------------------------------------------------------- bounds and tests

def questor_params(L, depth):
    """Sample-space bound u and sequence length t of correct test sequences."""
    u = (2 ** (depth + 1) - 2) * (2 ** depth + 1) ** 2
    t = 6 * (depth * L) ** 2
    return u, t


def metrics(slp):
    return slp.size, slp.depth, slp.param_height


def lemma_bounds(L, depth, h, H=1):
    """(degree, coefficient height, log2 value) bounds from program parameters.

    L is the graph size, ``depth`` the multiplicative depth and h the
    parameter height; the value bound holds where every |x_i| <= 2^H.
    """
    logL = log2_upper(L) if L >= 1 else Fraction(0)
    factor = 2 ** (depth + 1) - 1
    return 2 ** depth, factor * (h + logL), factor * (max(Fraction(h), Fraction(H)) + logL)


def degree_height_value_bounds(slp, H=1):
    """(degree bound, coefficient-height bound, log2 value bound) for the outputs.

    The value bound applies at points whose coordinates are bounded by 2^H.
    Logarithms are exact rational upper bounds.
    """
    return lemma_bounds(slp.graph_size, slp.depth, slp.param_height, H)


def probabilistic_zero_test(slp, trials=None, range_bound=None, seed=0):
    """True when every output vanished at all sampled points of {1..range_bound}^n.

    Defaults follow the correct-test-sequence parameters; smaller overrides
    are accepted and make the test heuristic.  A False answer is always right.
    """
    L, depth = slp.graph_size, max(slp.depth, 1)
    u, t = questor_params(L, depth)
    trials = t if trials is None else trials
    range_bound = max(u, 2) if range_bound is None else range_bound
    rng = random.Random(seed)
    for _ in range(trials):
        point = [rng.randint(1, range_bound) for _ in range(slp.nvars)]
        if any(v != 0 for v in evaluate(slp, point, 1)):
            return False
    return True
