"""Connectivity of a union read off from a bipartite graph of its pieces."""
from fractions import Fraction

from symconn.polycore import MultiPoly
from symconn.saoracle import SemiAlgDescription
from symconn.uniongraph import build_graph, graph_components, locate_vertex


def interval(a, b):
    atoms = [(MultiPoly.parse(f"X1-{a}", 1), "ge"), (MultiPoly.parse(f"{b}-X1", 1), "ge")]
    return SemiAlgDescription.basic(atoms, box=[(-1, 8)])


sets = [interval(0, 2), interval(1, 3), interval(5, 6)]
g = build_graph(sets, depth=8)
print("vertices:")
for v in g.vertices():
    print("  ", v)
comps = graph_components(g)
print("graph components:", len(comps))
for p in ([0], [3], [Fraction(11, 2)]):
    where = locate_vertex(g, sets, p, 0 if p[0] < 2 else (1 if p[0] <= 3 else 2))
    print(f"point {p[0]} sits at", where)
