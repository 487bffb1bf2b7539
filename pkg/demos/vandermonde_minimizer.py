"""Minimizing the next power sum over a fiber of the Vandermonde map."""
from fractions import Fraction

from symconn.vandermonde import brute_force_min, brute_force_minimizer, check_family_pattern, mv_minimizer, vandermonde_map

x = [Fraction(1), Fraction(2), Fraction(3)]
a = vandermonde_map(x, 2)
print("p1, p2 at (1,2,3):", [str(v) for v in a])

pt = mv_minimizer([4, 6], 3)
print("minimizer on the fiber p1=4, p2=6 with n=3:")
print("  lambda", pt.lam, " value", pt.value, "~", float(pt.value))
print("  point", pt.rur.to_json())
cands = brute_force_minimizer([4, 6], 3)
print("chamber candidates:", [(str(c.lam), round(float(c.value), 4)) for c in cands])
print("brute-force minimum:", [str(c.lam) for c in brute_force_min(cands)])

# at odd d only the min pattern holds the minimizer
print("n=4 fiber (0,6,0) minimizer faces:", sorted({str(c) for c in check_family_pattern([0, 6, 0], 4, "min")}))
try:
    check_family_pattern([0, 6, 0], 4, "front")
except Exception as exc:
    print("front pattern rejected:", type(exc).__name__)
