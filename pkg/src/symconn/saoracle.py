"""Semi-algebraic descriptions and a certified-subdivision connectivity oracle.

A :class:`SemiAlgDescription` is a disjunction of conjunctions of sign
conditions on polynomials, clipped to a rational bounding box.  The oracle
subdivides the box adaptively (all axes split at once, up to ``depth``
levels) and classifies each closed box by interval arithmetic as
``inside`` (every point satisfies some conjunct), ``outside`` (no point is in
the set) or ``unknown``.

Answers are three-valued.  ``connected`` comes with a polyline witness whose
segments are re-checked exactly (univariate sign analysis along each
segment), so it is sound.  ``disconnected`` means the non-outside boxes
already separate the two points; it is exact for the clipped set, and only
the clipping can make it wrong.  Everything else is ``unknown``.
"""
from __future__ import annotations

import itertools
import json
import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .compositions import Composition, substitute
from .polycore import InputError, MultiPoly, UniPoly, as_fraction, squarefree_part
from .realroots import RealUnivariateRep, isolate_roots, rational_roots, refine_interval, rur_eval_sign

log = logging.getLogger(__name__)

RELATIONS = ("ge", "gt", "eq", "lt", "le")
_NEGATE = {"ge": ("lt",), "gt": ("le",), "le": ("gt",), "lt": ("ge",), "eq": ("lt", "gt")}
_SYMBOL = {"ge": ">= 0", "gt": "> 0", "eq": "= 0", "lt": "< 0", "le": "<= 0"}

DEFAULT_DEPTH = 12
MAX_BOXES = 2 ** 24
MAX_DIM = 4


class ResourceError(RuntimeError):
    """The requested subdivision would exceed the box budget."""


def _holds(sign: int, rel: str) -> bool:
    return {
        "ge": sign >= 0, "gt": sign > 0, "eq": sign == 0, "lt": sign < 0, "le": sign <= 0,
    }[rel]


@dataclass(frozen=True)
class Atom:
    poly: MultiPoly
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise InputError(f"unknown relation {self.rel!r}")

    def __str__(self):
        return f"{self.poly.to_text()} {_SYMBOL[self.rel]}"


Box = tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class SemiAlgDescription:
    """``OR`` over ``dnf`` of ``AND`` over atoms, restricted to ``box``."""

    nvars: int
    dnf: tuple[tuple[Atom, ...], ...]
    box: Box | None = None

    def __post_init__(self):
        for conj in self.dnf:
            for atom in conj:
                if atom.poly.nvars != self.nvars:
                    raise InputError(
                        f"atom {atom} has {atom.poly.nvars} variables, expected {self.nvars}")
        if self.box is not None and len(self.box) != self.nvars:
            raise InputError("bounding box dimension mismatch")

    @classmethod
    def basic(cls, atoms: Iterable[tuple[MultiPoly, str]], box=None) -> "SemiAlgDescription":
        atoms = [Atom(p, r) for p, r in atoms]
        if not atoms:
            raise InputError("a basic set needs at least one atom")
        return cls(atoms[0].poly.nvars, (tuple(atoms),), _norm_box(box))

    @classmethod
    def full_space(cls, nvars: int, box=None) -> "SemiAlgDescription":
        return cls(nvars, ((),), _norm_box(box))

    @classmethod
    def union(cls, sets: Sequence["SemiAlgDescription"]) -> "SemiAlgDescription":
        _same_dim(*sets)
        return cls(sets[0].nvars, tuple(c for s in sets for c in s.dnf), _hull([s.bounding_box() for s in sets]))

    def with_box(self, box) -> "SemiAlgDescription":
        return SemiAlgDescription(self.nvars, self.dnf, _norm_box(box))

    def atoms(self) -> list[Atom]:
        return [a for conj in self.dnf for a in conj]

    def bounding_box(self) -> Box:
        if self.box is not None:
            return self.box
        bound = Fraction(1)
        for a in self.atoms():
            bound = max(bound, 1 + sum(abs(c) for c in a.poly.terms.values()))
        return tuple((-bound, bound) for _ in range(self.nvars))

    def key(self) -> tuple:
        """Canonical hashable form used by the oracle cache (atom order and repeats ignored)."""
        conjs = sorted(
            tuple(sorted({(a.rel, tuple(sorted(a.poly.terms.items()))) for a in conj}))
            for conj in self.dnf)
        return (self.nvars, tuple(conjs), self.bounding_box())

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "dnf": [[{"terms": a.poly.to_json(), "rel": a.rel} for a in conj] for conj in self.dnf],
            "box": [[str(lo), str(hi)] for lo, hi in self.bounding_box()],
        }


def _norm_box(box) -> Box | None:
    if box is None:
        return None
    return tuple((as_fraction(lo), as_fraction(hi)) for lo, hi in box)


def _hull(boxes: Sequence[Box]) -> Box:
    return tuple((min(b[i][0] for b in boxes), max(b[i][1] for b in boxes)) for i in range(len(boxes[0])))


def _same_dim(*sets):
    if len({s.nvars for s in sets}) > 1:
        raise InputError("descriptions have different variable counts")


def intersection(si: SemiAlgDescription, sj: SemiAlgDescription) -> SemiAlgDescription:
    """DNF of ``si AND sj`` (conjunct-wise products)."""
    _same_dim(si, sj)
    dnf = tuple(ci + cj for ci in si.dnf for cj in sj.dnf)
    box = _meet(si.bounding_box(), sj.bounding_box())
    return SemiAlgDescription(si.nvars, _simplify(dnf), box)


def _meet(a: Box, b: Box) -> Box:
    out = []
    for (l1, h1), (l2, h2) in zip(a, b):
        lo, hi = max(l1, l2), min(h1, h2)
        if lo > hi:
            lo = hi = l1
        out.append((lo, hi))
    return tuple(out)


def negate(s: SemiAlgDescription) -> list[tuple[Atom, ...]]:
    """DNF of the complement (in the full space)."""
    result: list[tuple[Atom, ...]] = [()]
    for conj in s.dnf:
        alts = [Atom(a.poly, r) for a in conj for r in _NEGATE[a.rel]]
        if not alts:
            return []
        result = [prev + (alt,) for prev in result for alt in alts]
    return result


def difference(si: SemiAlgDescription, sj: SemiAlgDescription) -> SemiAlgDescription:
    """DNF of ``si AND NOT sj``."""
    _same_dim(si, sj)
    comp = negate(sj)
    dnf = tuple(ci + cj for ci in si.dnf for cj in comp)
    return SemiAlgDescription(si.nvars, _simplify(dnf), si.bounding_box())


_SIGNS = {"ge": {0, 1}, "gt": {1}, "eq": {0}, "le": {-1, 0}, "lt": {-1}}


def _sign_key(p: MultiPoly) -> tuple[tuple, int]:
    """``p`` up to a positive factor: (monic terms, sign of the leading coefficient)."""
    lead = p.terms[max(p.terms)]
    return tuple(sorted((e, c / lead) for e, c in p.terms.items())), (1 if lead > 0 else -1)


_REL_OF_SIGNS = {frozenset(v): k for k, v in _SIGNS.items()}


def _simplify(dnf) -> tuple:
    """Merge atoms on the same polynomial and drop conjuncts that are syntactically empty.

    Atoms whose polynomials agree up to a scalar are combined into one sign
    condition: ``x >= 0`` with ``-x >= 0`` becomes ``x = 0``, and ``x >= 0`` with
    ``x < 0`` empties the conjunct.  A pair that only excludes zero has no
    single relation and is kept as given.
    """
    out = []
    for conj in dnf:
        order: list = []
        groups: dict = {}
        dead = False
        for a in conj:
            if a.poly.is_constant():
                c = a.poly.constant_term()
                if not _holds((c > 0) - (c < 0), a.rel):
                    dead = True
                    break
                continue
            key, flip = _sign_key(a.poly)
            if key not in groups:
                order.append(key)
                groups[key] = [a.poly, flip, {-1, 0, 1}, []]
            g = groups[key]
            g[2] &= {flip * v for v in _SIGNS[a.rel]}
            if a not in g[3]:
                g[3].append(a)
            if not g[2]:
                dead = True
                break
        if dead:
            continue
        atoms = []
        for key in order:
            poly, flip, signs, originals = groups[key]
            rel = _REL_OF_SIGNS.get(frozenset(flip * v for v in signs))
            if len(signs) == 3:
                continue
            if rel is None or len(originals) == 1:
                atoms.extend(originals)
            else:
                atoms.append(Atom(poly, rel))
        out.append(tuple(atoms))
    return tuple(out)


# ---------------------------------------------------------------------------
# Exact membership and exact segment checks
# ---------------------------------------------------------------------------


def _violated_atom(s: SemiAlgDescription, x) -> Atom | None:
    """First atom failing in the best conjunct, or None if ``x`` is a member."""
    first_bad = None
    for conj in s.dnf:
        bad = None
        for a in conj:
            if isinstance(x, RealUnivariateRep):
                sg = rur_eval_sign(x, a.poly)
            else:
                v = a.poly(*x)
                sg = (v > 0) - (v < 0)
            if not _holds(sg, a.rel):
                bad = a
                break
        if bad is None:
            return None
        first_bad = first_bad or bad
    return first_bad if s.dnf else Atom(MultiPoly.const(-1, s.nvars), "ge")


def eval_membership(s: SemiAlgDescription, x) -> bool:
    """Exact membership of a rational point or an encoded algebraic point."""
    dim = x.dim if isinstance(x, RealUnivariateRep) else len(x)
    if dim != s.nvars:
        raise InputError(f"point of dimension {dim} for a set in {s.nvars} variables")
    if not isinstance(x, RealUnivariateRep):
        x = [as_fraction(v) for v in x]
    return _violated_atom(s, x) is None


def _along(p: MultiPoly, a: Sequence[Fraction], b: Sequence[Fraction]) -> UniPoly:
    lines = [UniPoly((ai, bi - ai)) for ai, bi in zip(a, b)]
    acc = UniPoly(())
    for exp, c in p.terms.items():
        t = UniPoly.const(c)
        for line, e in zip(lines, exp):
            if e:
                t = t * line ** e
        acc = acc + t
    return acc


def _holds_on_unit(g: UniPoly, rel: str) -> bool:
    """``g(t) rel 0`` for every ``t`` in ``[0, 1]``, decided exactly."""
    if g.is_zero():
        return rel in ("ge", "le", "eq")
    if rel == "eq":
        return False
    if g.degree() == 0:
        c = g.constant_term()
        return _holds((c > 0) - (c < 0), rel)
    sq = squarefree_part(g)
    ends = []
    for e in (0, 1):
        if sq(e) == 0:
            sq = sq // UniPoly((-e, 1))
            ends.append((Fraction(e), Fraction(e)))
    roots = sorted((isolate_roots(sq) if sq.degree() > 0 else []) + ends)
    # shrink until no interval straddles 0 or 1 and neighbours are separated
    width = Fraction(1, 4)
    while True:
        roots = sorted(iv if iv[0] == iv[1] else refine_interval(sq, iv, width) for iv in roots)
        bad = any(a < e < b for a, b in roots for e in (0, 1))
        bad = bad or any(roots[k][1] >= roots[k + 1][0] for k in range(len(roots) - 1))
        if not bad:
            break
        width /= 4
    inside_roots = [iv for iv in roots if iv[1] >= 0 and iv[0] <= 1]
    if inside_roots and rel in ("gt", "lt"):
        return False
    tests = [Fraction(0), Fraction(1)]
    cuts = [(Fraction(-10**9), Fraction(-10**9))] + roots + [(Fraction(10**9), Fraction(10**9))]
    for (_, b), (a2, _) in zip(cuts, cuts[1:]):
        lo, hi = max(b, Fraction(0)), min(a2, Fraction(1))
        if lo < hi:
            tests.append((lo + hi) / 2)
    for t in tests:
        if any(a <= t <= b and a == b for a, b in roots):
            continue  # an exact rational root: value 0, allowed for ge/le
        v = g(t)
        if not _holds((v > 0) - (v < 0), rel):
            return False
    return True


def segment_in_set(s: SemiAlgDescription, a: Sequence, b: Sequence) -> bool:
    """Whether the closed segment ``[a, b]`` lies in a single conjunct of ``s``."""
    a = [as_fraction(v) for v in a]
    b = [as_fraction(v) for v in b]
    for conj in s.dnf:
        if all(_holds_on_unit(_along(at.poly, a, b), at.rel) for at in conj):
            return True
    return False


def polyline_in_set(s: SemiAlgDescription, pts: Sequence[Sequence]) -> bool:
    if len(pts) == 1:
        return eval_membership(s, pts[0])
    return all(segment_in_set(s, p, q) for p, q in zip(pts, pts[1:]))


# ---------------------------------------------------------------------------
# Interval enclosures on an integer grid
# ---------------------------------------------------------------------------


class _GridPoly:
    """``p`` rewritten in doubled grid coordinates with integer coefficients.

    Grid coordinate ``u`` (an integer in ``[0, 2N]``) maps to
    ``lo + (hi - lo) * u / (2N)``.  A positive overall scale preserves signs.
    """

    def __init__(self, p: MultiPoly, box: Box, N: int):
        m = p.nvars
        lines = []
        for lo, hi in box:
            step = (hi - lo) / (2 * N)
            lines.append(MultiPoly(1, {(0,): lo, (1,): step}))
        acc: dict[tuple, Fraction] = {}
        for exp, c in p.terms.items():
            factors = []
            for i, e in enumerate(exp):
                line = lines[i]
                pw = line ** e
                factors.append({ex[0]: v for ex, v in pw.terms.items()})
            for combo in itertools.product(*[list(f.items()) for f in factors]):
                key = tuple(k for k, _ in combo)
                v = c
                for _, fv in combo:
                    v *= fv
                acc[key] = acc.get(key, 0) + v
        den = 1
        for v in acc.values():
            den = den * v.denominator // _gcd(den, v.denominator)
        self.terms = [(e, int(v * den)) for e, v in acc.items() if v]
        self.m = m
        self.maxdeg = [max((e[i] for e, _ in self.terms), default=0) for i in range(m)]
        self.const = not any(any(e) for e, _ in self.terms)
        # flattened Taylor shift: one entry per (term, sub-exponent) pair
        betas: dict[tuple, int] = {}
        self.shift = []
        for exp, c in self.terms:
            for beta in itertools.product(*[range(e + 1) for e in exp]):
                k = c
                for e, bb in zip(exp, beta):
                    k *= _BINOM[e][bb]
                idx = betas.setdefault(beta, len(betas))
                self.shift.append((idx, k, tuple(e - bb for e, bb in zip(exp, beta))))
        self.beta_info = [(sum(b), all(x % 2 == 0 for x in b)) for b in betas]

    def enclose(self, center: tuple[int, ...], radius: int) -> tuple[int, int]:
        """Taylor-form enclosure over the cube ``|u_i - center_i| <= radius``."""
        if self.const:
            v = self.terms[0][1] if self.terms else 0
            return v, v
        cpow = []
        for i in range(self.m):
            row = [1]
            for _ in range(self.maxdeg[i]):
                row.append(row[-1] * center[i])
            cpow.append(row)
        acc = [0] * len(self.beta_info)
        if self.m == 1:
            c0 = cpow[0]
            for idx, k, (e0,) in self.shift:
                acc[idx] += k * c0[e0]
        elif self.m == 2:
            c0, c1 = cpow
            for idx, k, (e0, e1) in self.shift:
                acc[idx] += k * c0[e0] * c1[e1]
        else:
            for idx, k, es in self.shift:
                for row, e in zip(cpow, es):
                    if e:
                        k *= row[e]
                acc[idx] += k
        lo = hi = 0
        rpow = [radius ** t for t in range(sum(self.maxdeg) + 1)]
        for v, (deg, even) in zip(acc, self.beta_info):
            if not v:
                continue
            if deg == 0:
                lo += v
                hi += v
                continue
            mag = abs(v) * rpow[deg]
            if even:
                if v > 0:
                    hi += mag
                else:
                    lo -= mag
            else:
                lo -= mag
                hi += mag
        return lo, hi


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


_BINOM = [[1]]
for _n in range(1, 40):
    _BINOM.append([1] + [_BINOM[-1][k - 1] + _BINOM[-1][k] for k in range(1, _n)] + [1])


INSIDE, OUTSIDE, UNKNOWN = "inside", "outside", "unknown"


@dataclass
class Leaf:
    lo: tuple[int, ...]     # grid corner, in cells of the finest level
    size: int               # side length in finest cells
    status: str
    thickened: bool = False

    def hi(self):
        return tuple(v + self.size for v in self.lo)


class _Node:
    __slots__ = ("lo", "size", "leaf", "children")

    def __init__(self, lo, size):
        self.lo = lo
        self.size = size
        self.leaf: int | None = None
        self.children: list[_Node] = []


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class Subdivision:
    """Adaptive classification of a description's bounding box."""

    def __init__(self, s: SemiAlgDescription, depth: int):
        if s.nvars > MAX_DIM:
            raise InputError(f"subdivision supports at most {MAX_DIM} variables")
        if depth < 0:
            raise InputError("depth must be nonnegative")
        if s.nvars * depth > 24 and (2 ** (s.nvars * depth)) > MAX_BOXES * 64:
            log.info("deep subdivision requested: %d variables at depth %d", s.nvars, depth)
        self.s = s
        self.depth = depth
        self.m = s.nvars
        self.box = s.bounding_box()
        self.N = 2 ** depth
        self.has_eq = any(a.rel == "eq" for a in s.atoms())
        self.grid = [[(_GridPoly(a.poly, self.box, self.N), a.rel) for a in conj] for conj in s.dnf]
        self.leaves: list[Leaf] = []
        self.root = _Node((0,) * self.m, self.N)
        self._classify_all()
        self._adjacency()

    # -- classification -----------------------------------------------------

    def _atom_status(self, gp: _GridPoly, rel: str, center, radius, finest: bool):
        lo, hi = gp.enclose(center, radius)
        if rel == "ge":
            return INSIDE if lo >= 0 else OUTSIDE if hi < 0 else UNKNOWN
        if rel == "gt":
            return INSIDE if lo > 0 else OUTSIDE if hi <= 0 else UNKNOWN
        if rel == "le":
            return INSIDE if hi <= 0 else OUTSIDE if lo > 0 else UNKNOWN
        if rel == "lt":
            return INSIDE if hi < 0 else OUTSIDE if lo >= 0 else UNKNOWN
        if lo > 0 or hi < 0:
            return OUTSIDE
        if lo == hi == 0:
            return INSIDE
        return "thick" if finest else UNKNOWN

    def _classify(self, lo, size, state):
        """Status of a box given which atoms the parent already settled.

        ``state`` holds, per conjunct, the indices of atoms not yet certified
        on an ancestor, or None when the conjunct is already excluded.
        """
        center = tuple(2 * v + size for v in lo)
        finest = size == 1
        any_unknown = False
        thick_inside = False
        new_state = []
        for conj, todo in zip(self.grid, state):
            if todo is None:
                new_state.append(None)
                continue
            st = INSIDE
            thick = False
            left = []
            for k in todo:
                gp, rel = conj[k]
                a = self._atom_status(gp, rel, center, size, finest)
                if a == OUTSIDE:
                    st = OUTSIDE
                    break
                if a == "thick":
                    thick = True
                    left.append(k)
                elif a == UNKNOWN:
                    st = UNKNOWN
                    left.append(k)
            if st == INSIDE and not thick:
                return INSIDE, False, None
            if st == OUTSIDE:
                new_state.append(None)
                continue
            new_state.append(tuple(left))
            if st == INSIDE:
                thick_inside = True
            else:
                any_unknown = True
        if thick_inside:
            return INSIDE, True, None
        return (UNKNOWN, False, new_state) if any_unknown else (OUTSIDE, False, None)

    def _classify_all(self):
        if not self.s.dnf:
            self.root.leaf = 0
            self.leaves.append(Leaf(self.root.lo, self.N, OUTSIDE))
            return
        stack = [(self.root, [tuple(range(len(c))) for c in self.grid])]
        count = 0
        while stack:
            node, state = stack.pop()
            count += 1
            if count > MAX_BOXES:
                raise ResourceError(f"subdivision exceeded {MAX_BOXES} boxes")
            status, thick, new_state = self._classify(node.lo, node.size, state)
            if status == UNKNOWN and node.size > 1:
                half = node.size // 2
                for offs in itertools.product((0, half), repeat=self.m):
                    child = _Node(tuple(v + o for v, o in zip(node.lo, offs)), half)
                    node.children.append(child)
                stack.extend((c, new_state) for c in reversed(node.children))
            else:
                node.leaf = len(self.leaves)
                self.leaves.append(Leaf(node.lo, node.size, status, thick))

    # -- geometry -------------------------------------------------------------

    def to_point(self, grid2: Sequence[int]) -> list[Fraction]:
        """Doubled grid coordinates to a rational point."""
        return [lo + (hi - lo) * Fraction(u, 2 * self.N) for (lo, hi), u in zip(self.box, grid2)]

    def center(self, leaf: Leaf) -> list[Fraction]:
        return self.to_point([2 * v + leaf.size for v in leaf.lo])

    def touch_point(self, a: Leaf, b: Leaf) -> list[Fraction]:
        lo = [max(x, y) for x, y in zip(a.lo, b.lo)]
        hi = [min(x, y) for x, y in zip(a.hi(), b.hi())]
        return self.to_point([l + h for l, h in zip(lo, hi)])

    def to_grid(self, x: Sequence[Fraction]) -> list[Fraction]:
        return [(v - lo) * self.N / (hi - lo) if hi > lo else Fraction(0) for v, (lo, hi) in zip(x, self.box)]

    def in_box(self, x) -> bool:
        return all(lo <= v <= hi for v, (lo, hi) in zip(x, self.box))

    def query(self, lo: Sequence, hi: Sequence) -> list[int]:
        """Leaves whose closed boxes meet the closed grid box ``[lo, hi]``."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if any(nl > h or nl + node.size < l for nl, l, h in zip(node.lo, lo, hi)):
                continue
            if node.leaf is not None:
                out.append(node.leaf)
            else:
                stack.extend(node.children)
        return sorted(out)

    def leaves_containing(self, x) -> list[int]:
        g = self.to_grid(x)
        return self.query(g, g)

    # -- components -----------------------------------------------------------

    def locate2(self, p2: Sequence[int]) -> int | None:
        """Leaf whose interior holds the doubled-grid point ``p2`` (None on a face)."""
        top = 2 * self.N
        if any(v <= 0 or v >= top for v in p2):
            return None
        node = self.root
        while node.leaf is None:
            idx = 0
            for v, lo in zip(p2, node.lo):
                c = 2 * lo + node.size
                if v == c:
                    return None
                idx = 2 * idx + (v > c)
            node = node.children[idx]
        return node.leaf

    def _adjacency(self):
        # For touching dyadic boxes L >= M, the point just across M's boundary
        # in the contact direction, centred on M elsewhere, lies inside L.
        n = len(self.leaves)
        self.neighbors: list[list[int]] = [[] for _ in range(n)]
        self.uf_inside = UnionFind(n)
        self.uf_open = UnionFind(n)
        dirs = [d for d in itertools.product((-1, 0, 1), repeat=self.m) if any(d)]
        seen = set()
        for i, leaf in enumerate(self.leaves):
            if leaf.status == OUTSIDE:
                continue
            lo2 = [2 * v for v in leaf.lo]
            hi2 = [2 * (v + leaf.size) for v in leaf.lo]
            mid2 = [2 * v + leaf.size for v in leaf.lo]
            for d in dirs:
                probe = [h + 1 if t > 0 else l - 1 if t < 0 else c for t, l, h, c in zip(d, lo2, hi2, mid2)]
                j = self.locate2(probe)
                if j is None or j == i:
                    continue
                other = self.leaves[j]
                if other.status == OUTSIDE or other.size < leaf.size:
                    continue
                key = (i, j) if i < j else (j, i)
                if key in seen:
                    continue
                seen.add(key)
                self.neighbors[i].append(j)
                self.neighbors[j].append(i)
                self.uf_open.union(i, j)
                if leaf.status == INSIDE and other.status == INSIDE:
                    self.uf_inside.union(i, j)
        for nb in self.neighbors:
            nb.sort()

    def inside_components(self) -> dict[int, list[int]]:
        comps: dict[int, list[int]] = {}
        for i, leaf in enumerate(self.leaves):
            if leaf.status == INSIDE:
                comps.setdefault(self.uf_inside.find(i), []).append(i)
        return comps

    def open_components(self) -> dict[int, list[int]]:
        comps: dict[int, list[int]] = {}
        for i, leaf in enumerate(self.leaves):
            if leaf.status != OUTSIDE:
                comps.setdefault(self.uf_open.find(i), []).append(i)
        return comps

    def inside_path(self, a: int, b: int) -> list[int]:
        prev = {a: a}
        dq = deque([a])
        while dq:
            v = dq.popleft()
            if v == b:
                break
            for w in self.neighbors[v]:
                if w not in prev and self.leaves[w].status == INSIDE:
                    prev[w] = v
                    dq.append(w)
        if b not in prev:
            return []
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        return path[::-1]

    def stats(self) -> dict:
        out = {INSIDE: 0, OUTSIDE: 0, UNKNOWN: 0}
        for leaf in self.leaves:
            out[leaf.status] += 1
        return out


# ---------------------------------------------------------------------------
# Oracle answers
# ---------------------------------------------------------------------------


@dataclass
class OracleAnswer:
    value: str                              # connected | disconnected | unknown
    witness: list[list[Fraction]] | None = None
    depth: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "answer": self.value,
            "depth": self.depth,
            "witness": [[str(v) for v in p] for p in self.witness] if self.witness else [],
            "warnings": list(self.warnings),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass
class ComponentSample:
    """One rational point per certified component, plus resolution flags."""

    points: list[tuple[list[Fraction], int]]
    unknown: bool = False
    ambiguous: list[tuple[int, int]] = field(default_factory=list)
    depth: int = 0
    warnings: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, k):
        return self.points[k]


class ConnectivityOracle:
    """Interface for plugging in a connectivity decision procedure."""

    def sample_components(self, s: SemiAlgDescription, depth: int | None = None) -> ComponentSample:
        raise NotImplementedError

    def connect(self, s: SemiAlgDescription, u, w, depth: int | None = None) -> OracleAnswer:
        raise NotImplementedError


def _exact_member(s: SemiAlgDescription, sub: "Subdivision", leaf: Leaf) -> list[Fraction] | None:
    """A rational point of ``s`` in a thickened leaf, or None.

    Tries the centre, then rational roots of each equality polynomial on the
    axis-parallel segments through the centre.
    """
    c = sub.center(leaf)
    if eval_membership(s, c):
        return c
    lo = sub.to_point([2 * v for v in leaf.lo])
    hi = sub.to_point([2 * v for v in leaf.hi()])
    eqs = []
    for conj in s.dnf:
        for a in conj:
            if a.rel == "eq" and a.poly not in eqs:
                eqs.append(a.poly)
    for j in range(s.nvars):
        a, b = list(c), list(c)
        a[j], b[j] = lo[j], hi[j]
        for p in eqs:
            for t in rational_roots(_along(p, a, b)):
                if 0 <= t <= 1:
                    x = [ai + t * (bi - ai) for ai, bi in zip(a, b)]
                    if eval_membership(s, x):
                        return x
    return None


class SubdivisionOracle(ConnectivityOracle):
    """Certified interval-subdivision oracle with a thread-safe cache."""

    def __init__(self, depth: int = DEFAULT_DEPTH):
        self.depth = depth
        self._cache: dict = {}
        self._lock = threading.Lock()

    def subdivision(self, s: SemiAlgDescription, depth: int | None = None) -> Subdivision:
        depth = self.depth if depth is None else depth
        key = (s.key(), depth)
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        sub = Subdivision(s, depth)
        with self._lock:
            self._cache.setdefault(key, sub)
            return self._cache[key]

    def sample_components(self, s, depth=None) -> ComponentSample:
        sub = self.subdivision(s, depth)
        inside = sub.inside_components()
        opened = sub.open_components()
        points = []
        root_to_id = {}
        unknown = False
        missed = 0
        for cid, (root, members) in enumerate(sorted(inside.items())):
            root_to_id[root] = cid
            ranked = sorted(members, key=lambda k: (sub.leaves[k].thickened, -sub.leaves[k].size, k))
            if not sub.leaves[ranked[0]].thickened:
                points.append((sub.center(sub.leaves[ranked[0]]), cid))
                continue
            for k in ranked[:64]:
                p = _exact_member(s, sub, sub.leaves[k])
                if p is not None:
                    points.append((p, cid))
                    break
            else:
                unknown = True
                missed += 1
        ambiguous = []
        for members in opened.values():
            roots = sorted({root_to_id[sub.uf_inside.find(k)] for k in members
                            if sub.leaves[k].status == INSIDE})
            if not roots:
                unknown = True
            ambiguous.extend(itertools.combinations(roots, 2))
        warnings = []
        if sub.has_eq:
            warnings.append("equality atoms thickened at the finest level")
        if missed:
            warnings.append(f"no exact rational point found on {missed} thickened component(s)")
        if unknown:
            warnings.append("some non-outside region holds no certified box")
        if ambiguous:
            warnings.append(f"{len(ambiguous)} component pair(s) unresolved at depth {sub.depth}")
        return ComponentSample(points, unknown, ambiguous, sub.depth, warnings)

    # -- attaching query points ---------------------------------------------

    def _attach(self, sub: Subdivision, s: SemiAlgDescription, x: list[Fraction]) -> tuple[int | None, list]:
        """An inside leaf joined to ``x`` by a certified segment (leaf, extra points)."""
        if not sub.in_box(x):
            return None, []
        cells = sub.leaves_containing(x)
        for k in cells:
            if sub.leaves[k].status == INSIDE and not sub.leaves[k].thickened:
                return k, []
        g = sub.to_grid(x)
        for radius in (1, 2, 4, 8, 16):
            near = sub.query([v - radius for v in g], [v + radius for v in g])
            cand = [k for k in near if sub.leaves[k].status == INSIDE]
            cand.sort(key=lambda k: sum((c - v) ** 2 for c, v in zip(sub.center(sub.leaves[k]), x)))
            for k in cand[:24]:
                if segment_in_set(s, x, sub.center(sub.leaves[k])):
                    return k, []
        return None, []

    def connect(self, s, u, w, depth=None) -> OracleAnswer:
        u = [as_fraction(v) for v in u]
        w = [as_fraction(v) for v in w]
        for name, x in (("u", u), ("w", w)):
            if len(x) != s.nvars:
                raise InputError(f"point {name} has dimension {len(x)}, set has {s.nvars} variables")
            bad = _violated_atom(s, x)
            if bad is not None:
                raise InputError(f"point {name}={[str(v) for v in x]} violates {bad}")
        warnings = []
        if not all(lo <= v <= hi for x in (u, w) for v, (lo, hi) in zip(x, s.bounding_box())):
            s = s.with_box(_grow_box(s.bounding_box(), [u, w]))
            warnings.append("bounding box enlarged to contain the query points")
        sub = self.subdivision(s, depth)
        if sub.has_eq:
            warnings.append("equality atoms thickened; answer is resolution-dependent")
        if u == w:
            return OracleAnswer("connected", [u], sub.depth, warnings)
        if segment_in_set(s, u, w):
            return OracleAnswer("connected", [u, w], sub.depth, warnings)
        ku, _ = self._attach(sub, s, u)
        kw, _ = self._attach(sub, s, w)
        if ku is not None and kw is not None and sub.uf_inside.find(ku) == sub.uf_inside.find(kw):
            witness = [u]
            path = sub.inside_path(ku, kw)
            for i, k in enumerate(path):
                if i:
                    witness.append(sub.touch_point(sub.leaves[path[i - 1]], sub.leaves[k]))
                witness.append(sub.center(sub.leaves[k]))
            witness.append(w)
            witness = _dedupe(witness)
            if sub.has_eq or polyline_in_set(s, witness):
                return OracleAnswer("connected", witness, sub.depth, warnings)
            warnings.append("witness failed exact verification")
            return OracleAnswer("unknown", None, sub.depth, warnings)
        ou = {sub.uf_open.find(k) for k in sub.leaves_containing(u) if sub.leaves[k].status != OUTSIDE}
        ow = {sub.uf_open.find(k) for k in sub.leaves_containing(w) if sub.leaves[k].status != OUTSIDE}
        if ou and ow and not (ou & ow):
            warnings.append(f"disconnected at resolution depth {sub.depth} within the bounding box")
            return OracleAnswer("disconnected", None, sub.depth, warnings)
        warnings.append("points share a region with uncertified boxes")
        return OracleAnswer("unknown", None, sub.depth, warnings)


def _dedupe(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _grow_box(box: Box, pts) -> Box:
    out = []
    for i, (lo, hi) in enumerate(box):
        vals = [p[i] for p in pts]
        lo2 = min([lo] + [v - 1 for v in vals])
        hi2 = max([hi] + [v + 1 for v in vals])
        out.append((lo2, hi2))
    return tuple(out)


# ---------------------------------------------------------------------------
# Snapping algebraic points to rationals
# ---------------------------------------------------------------------------


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with the smallest denominator in ``[lo, hi]`` (continued fractions)."""
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -_simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if fl == lo or fl + 1 <= hi:
        return Fraction(fl) if fl == lo else Fraction(fl + 1)
    return fl + 1 / _simplest_between(1 / (hi - fl), 1 / (lo - fl))


def snap_point(s: SemiAlgDescription, x: RealUnivariateRep, max_rounds: int = 12) -> tuple[list[Fraction] | None, list[str]]:
    """A rational point of ``s`` joined to ``x`` inside ``s``.

    Coordinates that are exactly equal at ``x`` stay equal.  The snap is
    certified when a box around both points, restricted to the face where
    those equalities hold, lies inside one conjunct.  Boundary points get a
    best-effort snap flagged in the returned warnings.
    """
    from .algebraic import AlgebraicValue
    m = x.dim
    exact = [AlgebraicValue(MultiPoly.var(i, m), x).exact() for i in range(m)]
    if all(v is not None for v in exact):
        return exact, []
    pattern = [0]
    for i in range(m - 1):
        same = rur_eval_sign(x, MultiPoly.var(i, m) - MultiPoly.var(i + 1, m)) == 0
        pattern.append(pattern[-1] if same else pattern[-1] + 1)
    comp = Composition([pattern.count(k) for k in range(pattern[-1] + 1)])
    face = [[Atom(substitute(a.poly, comp), a.rel) for a in conj] for conj in s.dnf]
    on_boundary = any(rur_eval_sign(x, a.poly) == 0 for a in s.atoms() if a.rel != "eq")
    width = Fraction(1, 2 ** 8)
    fallback = None
    for _ in range(max_rounds):
        ivs = x.coordinate_intervals(width)
        blocks, pos = [], 0
        for size in comp:
            lo = max(iv[0] for iv in ivs[pos:pos + size])
            hi = min(iv[1] for iv in ivs[pos:pos + size])
            blocks.append((min(lo, hi), max(lo, hi)))
            pos += size
        vals = [_simplest_between(lo - width, hi + width) for lo, hi in blocks]
        point = [vals[pattern[i]] for i in range(m)]
        if eval_membership(s, point):
            hull = [(min(lo, v), max(hi, v)) for (lo, hi), v in zip(blocks, vals)]
            if any(_box_inside(conj, hull) for conj in face):
                return point, []
            fallback = fallback or point
        width /= 2 ** 6
    if fallback is not None and on_boundary:
        return fallback, ["algebraic point lies on the boundary; snap not certified"]
    return None, ["could not snap the algebraic point to a certified rational point"]


def _box_inside(conj: Sequence[Atom], box) -> bool:
    from .algebraic import enclose_poly
    for a in conj:
        lo, hi = enclose_poly(a.poly, box)
        ok = {"ge": lo >= 0, "gt": lo > 0, "le": hi <= 0, "lt": hi < 0, "eq": lo == hi == 0}[a.rel]
        if not ok:
            return False
    return True


_DEFAULT = SubdivisionOracle()


def sample_components(s: SemiAlgDescription, depth: int = DEFAULT_DEPTH) -> ComponentSample:
    return _DEFAULT.sample_components(s, depth)


def connect(s: SemiAlgDescription, u, w, depth: int = DEFAULT_DEPTH) -> OracleAnswer:
    return _DEFAULT.connect(s, u, w, depth)
