"""Bipartite graph whose components match the components of a union of sets.

For sets ``S_1..S_k`` the ``A`` vertices are one point per component of
each ``S_i \\ S_j`` and the ``B`` vertices one point per component of each
``S_i & S_j``.  An ``A`` vertex from ``S_i \\ S_j`` is joined to a ``B``
vertex from a pair containing ``i`` when the two points are connected inside
``S_i``.  Graph components then correspond one to one with the components
of the union.

The sets are accessed through a :class:`SetFamily`, so the same
construction works for sets in a common space (:class:`AmbientFamily`) and
for sets living on different faces of a chamber (see ``pipeline``).
"""
from __future__ import annotations

import itertools
import json
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polycore import InputError, InternalError, as_fraction
from .saoracle import (
    DEFAULT_DEPTH, ConnectivityOracle, SemiAlgDescription, SubdivisionOracle,
    difference, eval_membership, intersection,
)


class SetFamily:
    """Sets ``S_0..S_{k-1}`` plus the geometry needed to pair them up."""

    def __len__(self) -> int:
        raise NotImplementedError

    def set(self, i: int) -> SemiAlgDescription:
        raise NotImplementedError

    def difference(self, i: int, j: int) -> SemiAlgDescription:
        raise NotImplementedError

    def intersection(self, i: int, j: int) -> SemiAlgDescription:
        raise NotImplementedError

    def lift(self, i: int, j: int, point: Sequence[Fraction]) -> list[Fraction]:
        """Coordinates in ``S_i``'s space of a point of the ``{i, j}`` intersection."""
        raise NotImplementedError


class AmbientFamily(SetFamily):
    """Sets in one common space."""

    def __init__(self, sets: Sequence[SemiAlgDescription]):
        if not sets:
            raise InputError("need at least one set")
        if len({s.nvars for s in sets}) != 1:
            raise InputError("all sets must have the same variable count")
        box = _hull_box([s.bounding_box() for s in sets])
        self.sets = [s.with_box(box) for s in sets]

    def __len__(self):
        return len(self.sets)

    def set(self, i):
        return self.sets[i]

    def difference(self, i, j):
        return difference(self.sets[i], self.sets[j])

    def intersection(self, i, j):
        return intersection(self.sets[i], self.sets[j])

    def lift(self, i, j, point):
        return list(point)


def _hull_box(boxes):
    return tuple((min(b[t][0] for b in boxes), max(b[t][1] for b in boxes)) for t in range(len(boxes[0])))


@dataclass
class Vertex:
    point: list[Fraction]
    tag: tuple[int, int]        # ordered (i, j) for A; sorted (i, j) for B
    local_id: int
    kind: str                   # "A" or "B"

    def to_json(self):
        return {"point": [str(v) for v in self.point], "tag": list(self.tag), "local": self.local_id}


@dataclass
class BipartiteGraph:
    A: list[Vertex] = field(default_factory=list)
    B: list[Vertex] = field(default_factory=list)
    E: list[tuple[int, int, int]] = field(default_factory=list)   # (a index, b index, set index)
    component_of: dict[tuple[str, int], int] = field(default_factory=dict)
    incomplete: list[str] = field(default_factory=list)
    depth: int = DEFAULT_DEPTH

    def vertices(self):
        return [("A", i) for i in range(len(self.A))] + [("B", i) for i in range(len(self.B))]

    def vertex(self, key) -> Vertex:
        kind, i = key
        return (self.A if kind == "A" else self.B)[i]

    def to_json(self) -> dict:
        return {
            "A": [v.to_json() for v in self.A],
            "B": [v.to_json() for v in self.B],
            "E": [list(e) for e in self.E],
            "components": {f"{k}{i}": c for (k, i), c in sorted(self.component_of.items())},
            "incomplete": list(self.incomplete),
            "depth": self.depth,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SYMCONN_THREADS", "1")))
    except ValueError:
        return 1


def build_graph(sets, oracle: ConnectivityOracle | None = None, depth: int = DEFAULT_DEPTH) -> BipartiteGraph:
    """Vertices, edges and an incompleteness report for the union of ``sets``."""
    family = sets if isinstance(sets, SetFamily) else AmbientFamily(list(sets))
    oracle = oracle or SubdivisionOracle(depth)
    k = len(family)
    g = BipartiteGraph(depth=depth)

    def sample(desc, label):
        res = oracle.sample_components(desc, depth)
        if res.unknown or res.ambiguous:
            g.incomplete.append(f"{label}: " + "; ".join(res.warnings))
        return res

    if k == 1:
        for p, cid in sample(family.set(0), "S0"):
            g.A.append(Vertex(p, (0, 0), cid, "A"))
        graph_components(g)
        return g

    ordered = [(i, j) for i in range(k) for j in range(k) if i != j]
    unordered = list(itertools.combinations(range(k), 2))
    jobs = [("A", i, j) for i, j in ordered] + [("B", i, j) for i, j in unordered]

    def run(job):
        kind, i, j = job
        desc = family.difference(i, j) if kind == "A" else family.intersection(i, j)
        if not desc.dnf:
            return job, []
        return job, list(sample(desc, f"S{i}{'-' if kind == 'A' else '&'}S{j}"))

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(run, jobs))
    for (kind, i, j), pts in results:   # deterministic order
        for p, cid in pts:
            (g.A if kind == "A" else g.B).append(Vertex(p, (i, j), cid, kind))

    pairs = []
    for ai, u in enumerate(g.A):
        i = u.tag[0]
        for bi, w in enumerate(g.B):
            if i in w.tag:
                pairs.append((ai, bi, i))

    def test(pair):
        ai, bi, i = pair
        w = g.B[bi]
        other = w.tag[1] if w.tag[0] == i else w.tag[0]
        wp = family.lift(i, other, w.point)
        return pair, oracle.connect(family.set(i), g.A[ai].point, wp, depth)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        answers = list(pool.map(test, pairs))
    for (ai, bi, i), ans in answers:
        if ans.value == "connected":
            g.E.append((ai, bi, i))
        elif ans.value == "unknown":
            g.incomplete.append(f"A{ai}-B{bi} in S{i}: unknown")
    graph_components(g)
    for i in range(k):
        _bridge(g, family, i, oracle, depth, sample)
    return g


def _bridge(g, family, i, oracle, depth, sample):
    """Join vertices that share a component of S_i but not a graph component.

    Difference and intersection vertices alone miss two cases: a component of
    S_i meeting no other set yields one A-vertex per difference, and a
    component covered by intersections yields only B-vertices.  Neither case
    produces an edge.  For each such component we add an A and a B vertex
    tagged (i, i) at its sample point, which keeps the graph bipartite.
    """
    touching = [("A", a) for a, v in enumerate(g.A) if v.tag[0] == i]
    touching += [("B", b) for b, v in enumerate(g.B) if i in v.tag]
    if len({g.component_of[v] for v in touching}) <= 1:
        return
    s = family.set(i)
    for rep, cid in sample(s, f"S{i}"):
        members = []
        for key in touching:
            v = g.vertex(key)
            vp = v.point
            if key[0] == "B" and v.tag != (i, i):
                other = v.tag[1] if v.tag[0] == i else v.tag[0]
                vp = family.lift(i, other, v.point)
            ans = oracle.connect(s, rep, vp, depth)
            if ans.value == "connected":
                members.append(key)
            elif ans.value == "unknown":
                g.incomplete.append(f"{key[0]}{key[1]} against S{i} component {cid}: unknown")
        if len({g.component_of[v] for v in members}) <= 1:
            continue
        a = len(g.A)
        b = len(g.B)
        g.A.append(Vertex(rep, (i, i), cid, "A"))
        g.B.append(Vertex(rep, (i, i), cid, "B"))
        g.E.append((a, b, i))
        for kind, idx in members:
            g.E.append((idx, b, i) if kind == "A" else (a, idx, i))
        graph_components(g)


def graph_components(g: BipartiteGraph) -> list[list[tuple[str, int]]]:
    """Breadth-first components; fills ``g.component_of``."""
    adj: dict[tuple[str, int], list] = {v: [] for v in g.vertices()}
    for ai, bi, _ in g.E:
        adj[("A", ai)].append(("B", bi))
        adj[("B", bi)].append(("A", ai))
    g.component_of = {}
    comps = []
    for v in g.vertices():
        if v in g.component_of:
            continue
        cid = len(comps)
        comp = [v]
        g.component_of[v] = cid
        dq = deque([v])
        while dq:
            x = dq.popleft()
            for y in adj[x]:
                if y not in g.component_of:
                    g.component_of[y] = cid
                    comp.append(y)
                    dq.append(y)
        comps.append(comp)
    return comps


class LocateResult:
    def __init__(self, vertex, status, warnings=()):
        self.vertex = vertex          # ("A"|"B", index) or None
        self.status = status          # "found" | "unknown"
        self.warnings = list(warnings)

    def __repr__(self):
        return f"LocateResult({self.vertex}, {self.status})"


def locate_vertex(g: BipartiteGraph, sets, p: Sequence, index: int,
                  oracle: ConnectivityOracle | None = None, depth: int | None = None) -> LocateResult:
    """A vertex carrying ``index`` that is connected to ``p`` inside ``S_index``.

    ``A`` vertices are tried before ``B`` vertices.
    """
    family = sets if isinstance(sets, SetFamily) else AmbientFamily(list(sets))
    oracle = oracle or SubdivisionOracle(g.depth)
    depth = g.depth if depth is None else depth
    p = [as_fraction(v) for v in p]
    s = family.set(index)
    if not eval_membership(s, p):
        raise InputError(f"point {[str(v) for v in p]} is not in set {index}")
    unknown = []
    cands = [("A", ai) for ai, v in enumerate(g.A) if v.tag[0] == index]
    cands += [("B", bi) for bi, v in enumerate(g.B) if index in v.tag]
    for key in cands:
        v = g.vertex(key)
        if key[0] == "B":
            other = v.tag[1] if v.tag[0] == index else v.tag[0]
            vp = family.lift(index, other, v.point)
        else:
            vp = v.point
        ans = oracle.connect(s, vp, p, depth)
        if ans.value == "connected":
            return LocateResult(key, "found", ans.warnings)
        if ans.value == "unknown":
            unknown.append(f"{key[0]}{key[1]}")
    if unknown or g.incomplete:
        return LocateResult(None, "unknown", [f"unresolved against {', '.join(unknown)}"] if unknown else g.incomplete)
    raise InternalError(f"no graph vertex reaches point {[str(v) for v in p]} in set {index}")
