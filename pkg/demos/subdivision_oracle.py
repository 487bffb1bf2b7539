"""Counting components and connecting points with the subdivision oracle."""
from fractions import Fraction as F

from symconn.polycore import MultiPoly
from symconn.saoracle import SemiAlgDescription, connect, difference, polyline_in_set, sample_components


def basic(*atoms, nvars=2, box=None):
    return SemiAlgDescription.basic([(MultiPoly.parse(t, nvars), r) for t, r in atoms], box=box)


annulus = basic(("X1^2+X2^2-1", "ge"), ("4-X1^2-X2^2", "ge"))
hyperbola = basic(("X1*X2-1", "ge"), box=[(-3, 3), (-3, 3)])
for name, s in [("annulus", annulus), ("hyperbola sides", hyperbola)]:
    res = sample_components(s, 8)
    print(f"{name}: {len(res)} component(s), samples {[[str(v) for v in p] for p, _ in res]}")

ans = connect(annulus, [F(3, 2), 0], [F(-3, 2), 0])
print("annulus, (3/2,0) to (-3/2,0):", ans.value)
print("  witness", [[str(v) for v in p] for p in ans.witness])
print("  witness verified exactly:", polyline_in_set(annulus, ans.witness))

print("hyperbola, (2,1) to (-2,-1):", connect(hyperbola, [2, 1], [-2, -1]).value)

# cutting the annulus along the x axis leaves the two open half annuli
cut = difference(annulus, basic(("X2", "eq")))
print("annulus minus the x axis:", len(sample_components(cut, 8)), "component(s)")
