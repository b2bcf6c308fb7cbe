"""Which k are sums of distinct powers of two below 2^n?

The system X_i^2 = X_i plus sum 2^i X_i = k has a zero exactly when k is
such a sum, so consistency flips at k = 2^n.
"""
from geosolve import decide_consistency, parse_system

n = 3
names = ["X%d" % (i + 1) for i in range(n)]
square = ["X%d^2 - X%d" % (i + 1, i + 1) for i in range(n)]
weighted = " + ".join("%d*X%d" % (2 ** i, i + 1) for i in range(n))

for k in range(2 ** n + 2):
    system = parse_system(square + ["%s - %d" % (weighted, k)], names)
    verdict = decide_consistency(system)
    print(k, "consistent" if verdict.consistent else "inconsistent")
