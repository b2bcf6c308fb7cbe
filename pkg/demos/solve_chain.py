"""Solve the chain X1^2 = 2, X_{i+1} = X_i^2 and check the result."""
from geosolve import parse_system, solve_system, validate_resolution

n = 4
names = ["X%d" % (i + 1) for i in range(n)]
eqs = ["X1^2 - 2"] + ["X%d - X%d^2" % (i + 2, i + 1) for i in range(n - 1)]
system = parse_system(eqs, names)

sol = solve_system(system, seed=1)
for rec in sol.log:
    print("level", rec.level, "degree", rec.degree)

res = sol.resolution
print("minimal polynomial:", res.q)
print("primitive element:", res.lam)
print("valid:", validate_resolution(res, system).ok)
