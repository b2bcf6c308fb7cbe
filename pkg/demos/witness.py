"""A Bezout identity a = g*f + sum h_i f_i for an f with no common zero."""
from geosolve import bezout_witness, parse_poly, parse_system, solve_system

names = ["X1", "X2"]
system = parse_system(["X1^2 + X1 + 1", "X2 - X1^2"], names)
res = solve_system(system).resolution

w = bezout_witness(res, parse_poly("X1", names), system)
print("a =", w.a)
print(w.to_json())
