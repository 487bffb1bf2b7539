"""Deciding connectivity in a symmetric set by reduction to the minimizer faces."""
import json

from symconn.pipeline import Problem, connectivity_symmetric, validate
from symconn.polycore import MultiPoly, power_sum

# S = {x in R^3 : p1(x)^2 >= 1}, two slabs on either side of the plane p1 = 0.
# Query points are taken in the chamber x1 <= x2 <= x3.
p1 = power_sum(1, 3)
polys = [(p1 * p1 - MultiPoly.const(1, 3), "ge")]

for x, y in [([1, 1, 1], [-1, 0, 3]), ([-1, -1, -1], [1, 1, 1])]:
    P = Problem(3, polys, x, y, depth=12)
    assert not validate(P)
    v = connectivity_symmetric(P)
    print(f"{x} vs {y}: {v.answer} (exit code {v.exit_code})")

print("problem JSON accepted by the CLI:")
print(json.dumps(Problem(3, polys, [1, 1, 1], [-1, 0, 3]).to_json(), indent=1))
