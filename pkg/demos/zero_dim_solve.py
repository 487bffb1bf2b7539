"""Weighted power-sum systems solved through a rational univariate representation."""
from symconn.zerodim import build_system, solve_zero_dim, verify_parametrization

# two blocks of sizes 1 and 2 with p1 = 0 and p2 = 6
system = build_system((1, 2), [0, 6])
for p in system:
    print("equation:", p, "= 0")
param = solve_zero_dim(system)
print("eliminating polynomial q:", param.q)
print("separating form:", param.separating_form)
print("parametrization checks out:", verify_parametrization(param, system))
for pt in param.real_points():
    print("  real solution:", pt.to_json())
print("solutions in the chamber z1 <= z2:", len(param.chamber_points()))
