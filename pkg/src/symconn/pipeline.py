"""Connectivity of two sorted points in a set cut out by symmetric polynomials.

Given symmetric ``f_1..f_s`` of degree at most ``d < n`` and two points
``x, y`` of ``S`` in the chamber ``X1 <= ... <= Xn``, the question reduces
to a union of ``d``-dimensional face sets:

1. take the minimizer family ``L`` of compositions of ``n`` into ``d`` parts,
2. restrict every ``f`` to each face ``lambda`` in ``L``,
3. build the union graph of those face sets,
4. replace ``x`` and ``y`` by the ``p_{d+1}``-minimizers of their fibers,
5. locate both minimizers in the graph and compare graph components.

Face sets of different faces are glued along common faces: two faces meet
in the face of their join, and that is where intersection vertices live.
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .compositions import (
    Composition, FamilyPattern, expand_point, join, minimizer_family, substitute_symmetric,
    symmetric_coefficients,
)
from .polycore import InputError, MultiPoly, as_fraction, is_symmetric
from .saoracle import (
    DEFAULT_DEPTH, Atom, SemiAlgDescription, SubdivisionOracle, _violated_atom, snap_point,
)
from .uniongraph import SetFamily, _threads, build_graph, graph_components, locate_vertex
from .vandermonde import VandermondePoint, mv_minimizer, vandermonde_map

log = logging.getLogger(__name__)

INPUT_RELATIONS = ("ge", "eq")


@dataclass
class Problem:
    n: int
    polys: list[tuple[MultiPoly, str]]
    x: list[Fraction]
    y: list[Fraction]
    pattern: FamilyPattern = FamilyPattern.MIN
    depth: int = DEFAULT_DEPTH

    @property
    def d(self) -> int:
        return max((max(p.degree(), 0) for p, _ in self.polys), default=0)

    def description(self) -> SemiAlgDescription:
        return SemiAlgDescription(self.n, (tuple(Atom(p, r) for p, r in self.polys),))

    @classmethod
    def from_json(cls, data) -> "Problem":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise InputError("problem must be a JSON object")
        for key in ("n", "polys", "x", "y"):
            if key not in data:
                raise InputError(f"problem is missing key {key!r}")
        n = data["n"]
        if not isinstance(n, int) or n < 1:
            raise InputError("'n' must be a positive integer")
        polys = []
        for k, item in enumerate(data["polys"]):
            try:
                p = MultiPoly.from_json(item["terms"], n)
                rel = item.get("rel", "ge")
            except (KeyError, TypeError) as exc:
                raise InputError(f"polys[{k}]: expected an object with 'terms' and 'rel'") from exc
            except InputError as exc:
                raise InputError(f"polys[{k}]: {exc}") from exc
            if rel not in INPUT_RELATIONS:
                raise InputError(f"polys[{k}]: relation must be 'ge' or 'eq', got {rel!r}")
            polys.append((p, rel))
        pts = {}
        for key in ("x", "y"):
            try:
                pts[key] = [as_fraction(v) for v in data[key]]
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise InputError(f"{key}: cannot read coordinates ({exc})") from exc
        cfg = data.get("config", {}) or {}
        try:
            pattern = FamilyPattern(cfg.get("pattern", "min"))
        except ValueError as exc:
            raise InputError(f"config.pattern: unknown pattern {cfg.get('pattern')!r}") from exc
        depth = cfg.get("depth", DEFAULT_DEPTH)
        if not isinstance(depth, int) or depth < 0:
            raise InputError("config.depth must be a nonnegative integer")
        return cls(n, polys, pts["x"], pts["y"], pattern, depth)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "polys": [{"terms": p.to_json(), "rel": r} for p, r in self.polys],
            "x": [str(v) for v in self.x],
            "y": [str(v) for v in self.y],
            "config": {"pattern": self.pattern.value, "depth": self.depth},
        }


def validate(P: Problem) -> list[str]:
    """Every violated precondition, as readable messages (empty when valid)."""
    out = []
    if not P.polys:
        out.append("no polynomials given")
    for k, (p, rel) in enumerate(P.polys):
        if p.nvars != P.n:
            out.append(f"polys[{k}] has {p.nvars} variables, expected {P.n}")
            continue
        if rel not in INPUT_RELATIONS:
            out.append(f"polys[{k}]: relation {rel!r} not allowed")
        if not is_symmetric(p):
            out.append(f"polys[{k}] is not symmetric: {p.to_text()}")
    if P.d >= P.n:
        out.append(f"degree {P.d} is not below n={P.n}")
    for name, pt in (("x", P.x), ("y", P.y)):
        if len(pt) != P.n:
            out.append(f"{name} has {len(pt)} coordinates, expected {P.n}")
            continue
        if any(a > b for a, b in zip(pt, pt[1:])):
            out.append(f"{name} is not sorted nondecreasingly")
        if not out or all(not m.startswith("polys") for m in out):
            bad = _violated_atom(P.description(), pt)
            if bad is not None:
                out.append(f"{name} is not in S: violates {bad}")
    return out


def chamber_atoms(k: int) -> list[Atom]:
    return [Atom(MultiPoly.var(i + 1, k) - MultiPoly.var(i, k), "ge") for i in range(k - 1)]


def face_set(polys, lam: Composition, box=None, coeffs=None) -> SemiAlgDescription:
    """``S`` restricted to the chamber face of ``lam``, in block coordinates.

    ``coeffs`` optionally holds precomputed :func:`symmetric_coefficients` per polynomial.
    """
    coeffs = coeffs or [None] * len(polys)
    atoms = [Atom(substitute_symmetric(p, lam, c), r) for (p, r), c in zip(polys, coeffs)]
    atoms += chamber_atoms(len(lam))
    return SemiAlgDescription(len(lam), (tuple(atoms),), box)


class FaceFamily(SetFamily):
    """Face sets ``S(F^[lam])`` for ``lam`` in a family, glued along joins."""

    def __init__(self, polys, lams: Sequence[Composition], extra_points: Sequence[Sequence[Fraction]] = ()):
        self.polys = list(polys)
        self.lams = [Composition(l) for l in lams]
        self.coeffs = [symmetric_coefficients(p) for p, _ in self.polys]
        bound = Fraction(1)
        for lam in self.lams:
            for (p, _), c in zip(self.polys, self.coeffs):
                q = substitute_symmetric(p, lam, c)
                bound = max(bound, 1 + sum(abs(c) for c in q.terms.values()))
        for pt in extra_points:
            bound = max([bound] + [abs(v) + 1 for v in pt])
        self.bound = bound

    def _box(self, k):
        return tuple((-self.bound, self.bound) for _ in range(k))

    def __len__(self):
        return len(self.lams)

    def set(self, i):
        lam = self.lams[i]
        return face_set(self.polys, lam, self._box(len(lam)), self.coeffs)

    def difference(self, i, j):
        li, lj = self.lams[i], self.lams[j]
        base = self.set(i)
        cuts = sorted(li.cuts())
        leaving = [t for t, c in enumerate(cuts) if c not in lj.cuts()]
        k = len(li)
        conj = base.dnf[0]
        dnf = tuple(conj + (Atom(MultiPoly.var(t + 1, k) - MultiPoly.var(t, k), "gt"),) for t in leaving)
        return SemiAlgDescription(k, dnf, base.box)

    def intersection(self, i, j):
        nu = join(self.lams[i], self.lams[j])
        return face_set(self.polys, nu, self._box(len(nu)), self.coeffs)

    def lift(self, i, j, point):
        nu = join(self.lams[i], self.lams[j])
        full = expand_point(list(point), nu)
        out, pos = [], 0
        for part in self.lams[i]:
            out.append(full[pos])
            pos += part
        return out


@dataclass
class Verdict:
    answer: str
    certificate: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return {"connected": 0, "disconnected": 1, "unknown": 2}[self.answer]

    def to_json(self) -> dict:
        return {"answer": self.answer, "certificate": self.certificate}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, default=str)


def _contract(pt: VandermondePoint, lam: Composition):
    return pt.local


def connectivity_symmetric(P: Problem, oracle: SubdivisionOracle | None = None) -> Verdict:
    """Connected / disconnected / unknown verdict for ``x`` and ``y`` in ``S``."""
    problems = validate(P)
    if problems:
        raise InputError("; ".join(problems))
    cert: dict = {"n": P.n, "d": P.d, "pattern": P.pattern.value, "depth": P.depth, "warnings": []}
    if P.x == P.y:
        cert["reason"] = "x equals y"
        return Verdict("connected", cert)
    d = P.d
    if d == 0:
        # constant inequalities: S is all of space (x is in S), and the chamber is convex
        cert["reason"] = "all polynomials constant"
        return Verdict("connected", cert)
    oracle = oracle or SubdivisionOracle(P.depth)

    # (1)-(2): the face family; (5)-(6): fiber values and minimizers
    family_lams = minimizer_family(P.n, d, P.pattern)
    a = vandermonde_map(P.x, d)
    b = vandermonde_map(P.y, d)
    with ThreadPoolExecutor(max_workers=min(2, _threads())) as pool:
        fx, fy = pool.submit(mv_minimizer, a, P.n, P.pattern), pool.submit(mv_minimizer, b, P.n, P.pattern)
        mx, my = fx.result(), fy.result()
    lams = list(family_lams)
    for m in (mx, my):
        if m.lam not in lams:
            cert["warnings"].append(f"minimizer face {m.lam} lies outside the family; added to the graph")
            lams.append(m.lam)
    cert.update({
        "a": [str(v) for v in a], "b": [str(v) for v in b],
        "family": [str(l) for l in lams],
        "x_prime": mx.to_json(), "y_prime": my.to_json(),
        "lambda_x": str(mx.lam), "lambda_y": str(my.lam),
        "gamma": str(mx.comp()), "eta": str(my.comp()),
    })

    approx_pts = [[Fraction(round(float(v), 6)) for v in m.local.approx(Fraction(1, 2 ** 20))] for m in (mx, my)]
    family = FaceFamily(P.polys, lams, approx_pts)

    # snap the algebraic minimizers into their face sets
    snapped = []
    for name, m in (("x", mx), ("y", my)):
        idx = lams.index(m.lam)
        pt, warns = snap_point(family.set(idx), m.local)
        cert["warnings"].extend(f"{name}': {w}" for w in warns)
        if pt is None:
            cert["unresolved"] = [f"snapping {name}'"]
            return Verdict("unknown", cert)
        snapped.append((idx, pt))
    cert["x_prime_snapped"] = [str(v) for v in snapped[0][1]]
    cert["y_prime_snapped"] = [str(v) for v in snapped[1][1]]

    # (3)-(4): union graph
    g = build_graph(family, oracle, P.depth)
    comps = graph_components(g)
    cert["graph"] = {"A": len(g.A), "B": len(g.B), "E": len(g.E), "components": len(comps)}
    if g.incomplete:
        cert["warnings"].extend(g.incomplete)

    # (7)-(9): locate and compare
    located = []
    for name, (idx, pt) in zip(("x'", "y'"), snapped):
        res = locate_vertex(g, family, pt, idx, oracle, P.depth)
        if res.vertex is None:
            cert["unresolved"] = [f"locating {name}"] + res.warnings
            return Verdict("unknown", cert)
        located.append(res.vertex)
    cx, cy = (g.component_of[v] for v in located)
    cert["vertices"] = [f"{k}{i}" for k, i in located]
    cert["components"] = [cx, cy]
    if cx == cy:
        return Verdict("connected", cert)
    if g.incomplete:
        cert["unresolved"] = list(g.incomplete)
        return Verdict("unknown", cert)
    return Verdict("disconnected", cert)


def chamber_description(P: Problem) -> SemiAlgDescription:
    """``S`` intersected with the chamber, in all ``n`` coordinates."""
    atoms = [Atom(p, r) for p, r in P.polys] + chamber_atoms(P.n)
    return SemiAlgDescription(P.n, (tuple(atoms),))


def direct_connectivity(P: Problem, depth: int | None = None, oracle: SubdivisionOracle | None = None):
    """The subdivision oracle run directly on ``S`` within the chamber (small ``n`` only)."""
    oracle = oracle or SubdivisionOracle()
    return oracle.connect(chamber_description(P), P.x, P.y, P.depth if depth is None else depth)


def snapped_minimizer(P: Problem, x: Sequence[Fraction]) -> tuple[list[Fraction] | None, VandermondePoint]:
    """A rational stand-in for the fiber minimizer of ``x``, in full coordinates."""
    d = P.d
    m = mv_minimizer(vandermonde_map(x, d), P.n, P.pattern)
    pt, _ = snap_point(face_set(P.polys, m.lam), m.local)
    return (expand_point(pt, m.lam) if pt is not None else None), m
