"""Compositions of n, their order, and the faces of the chamber they index."""
from symconn.compositions import (
    comp_of_point, enumerate_compositions, expand_point, join, minimizer_family, precedes, substitute,
)
from symconn.polycore import MultiPoly, power_sum

print("compositions of 4 into 2 parts:", [str(c) for c in enumerate_compositions(4, 2)])
print("(1,1,2) refines (2,2):", precedes((1, 1, 2), (2, 2)))
print("join of (1,3) and (3,1):", join((1, 3), (3, 1)))
print("composition of the point (0,0,1,2,2):", comp_of_point([0, 0, 1, 2, 2]))
print("block point (5,7) on (2,1) expands to", expand_point([5, 7], (2, 1)))

# the face (2,1) of p1^2 - p2 in three variables
f = power_sum(1, 3) ** 2 - power_sum(2, 3)
print("p1^2 - p2 on face (2,1):", substitute(f, (2, 1)))

for d in (2, 3, 4):
    print(f"n=7 d={d} front family:", [str(c) for c in minimizer_family(7, d)])
print("n=5 d=3 min family:", [str(c) for c in minimizer_family(5, 3, "min")])
