"""Zero-dimensional parametrizations of the weighted power-sum systems.

For a composition ``lam`` of length ``d`` and a fiber ``a`` the system is

    lam_1 X_1^i + ... + lam_d X_d^i - a_i = 0,   i = 1..d.

Solving goes through the finite-dimensional quotient algebra: a reduced
Groebner basis (grevlex) gives a monomial basis and the multiplication
matrices, a linear form ``T = sum c_i X_i`` is tested for separation with
the Hermite trace form, and the representation
``(q, q0, q1, ..., qd)`` is read off trace sums.  Every result is checked by
substituting back into the system before it is returned.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .compositions import Composition
from .polycore import InputError, InternalError, MultiPoly, UniPoly, as_fraction, squarefree_part
from .realroots import RealUnivariateRep, chamber_filter, homogenized_numerator, thom_encodings

log = logging.getLogger(__name__)

MAX_VARIABLES = 4
TRIAL_BUDGET = 200


class SolverError(RuntimeError):
    """No separating linear form was found within the trial budget."""


@dataclass(frozen=True)
class ZeroDimParam:
    q: UniPoly
    q0: UniPoly
    coords: tuple[UniPoly, ...]
    separating_form: tuple[int, ...]

    @property
    def degree(self) -> int:
        return max(self.q.degree(), 0)

    def real_points(self) -> list[RealUnivariateRep]:
        return [RealUnivariateRep(self.q, self.q0, self.coords, z) for z in thom_encodings(self.q)]

    def chamber_points(self) -> list[RealUnivariateRep]:
        encs = chamber_filter(self.q, self.q0, self.coords)
        return [RealUnivariateRep(self.q, self.q0, self.coords, z) for z in encs]


def build_system(lam: Sequence[int], a: Sequence) -> list[MultiPoly]:
    """``sum_j lam_j X_j^i - a_i`` for ``i = 1..len(a)`` in ``len(lam)`` variables."""
    lam = Composition(lam)
    if len(a) != len(lam):
        raise InputError(f"fiber of length {len(a)} for composition of length {len(lam)}")
    return weighted_power_system(lam, a)


def weighted_power_system(lam: Sequence[int], a: Sequence) -> list[MultiPoly]:
    """Like :func:`build_system` but allows more equations than variables."""
    lam = Composition(lam)
    k = len(lam)
    out = []
    for i, ai in enumerate(a, start=1):
        terms = {}
        for j, w in enumerate(lam):
            e = [0] * k
            e[j] = i
            terms[tuple(e)] = Fraction(w)
        terms[(0,) * k] = -as_fraction(ai)
        out.append(MultiPoly(k, terms))
    return out


# ---------------------------------------------------------------------------
# Groebner bases (grevlex), on plain dicts
# ---------------------------------------------------------------------------


def _grevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lead(p: dict):
    return max(p, key=_grevlex)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled(p: dict, g: dict, coef: Fraction, shift) -> dict:
    out = dict(p)
    for e, c in g.items():
        k = tuple(x + y for x, y in zip(e, shift))
        v = out.get(k, 0) - coef * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _normal_form(p: dict, basis: list[tuple[tuple, dict]]) -> dict:
    """Full reduction of ``p`` by a list of (leading monomial, monic poly)."""
    p = dict(p)
    rem: dict = {}
    while p:
        lm = _lead(p)
        c = p[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                shift = tuple(x - y for x, y in zip(lm, glm))
                p = _sub_scaled(p, g, c, shift)
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem


def _monic(p: dict) -> tuple[tuple, dict]:
    lm = _lead(p)
    c = p[lm]
    return lm, {e: v / c for e, v in p.items()}


def groebner_basis(polys: Sequence[MultiPoly]) -> list[tuple[tuple, dict]]:
    """Reduced grevlex Groebner basis as (leading monomial, monic poly) pairs."""
    basis: list[tuple[tuple, dict]] = []
    for f in polys:
        r = _normal_form(f.terms, basis)
        if r:
            basis.append(_monic(r))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        pairs.sort(key=lambda ij: _grevlex(tuple(map(max, basis[ij[0]][0], basis[ij[1]][0]))))
        i, j = pairs.pop(0)
        (la, fa), (lb, fb) = basis[i], basis[j]
        lcm = tuple(map(max, la, lb))
        if all(min(x, y) == 0 for x, y in zip(la, lb)):
            continue
        s = _sub_scaled(
            {tuple(x + y for x, y in zip(e, (l - a for l, a in zip(lcm, la)))): c for e, c in fa.items()},
            fb, Fraction(1), tuple(l - b for l, b in zip(lcm, lb)),
        )
        r = _normal_form(s, basis)
        if r:
            basis.append(_monic(r))
            k = len(basis) - 1
            pairs.extend((m, k) for m in range(k))
    # minimalize and inter-reduce
    minimal = [b for idx, b in enumerate(basis)
               if not any(_divides(o[0], b[0]) and (o[0] != b[0] or jdx < idx)
                          for jdx, o in enumerate(basis) if jdx != idx)]
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        tail = _normal_form({e: c for e, c in g.items() if e != lm}, others)
        tail[lm] = Fraction(1)
        reduced.append((lm, tail))
    reduced.sort(key=lambda b: _grevlex(b[0]))
    return reduced


class QuotientAlgebra:
    """``Q[X_1..X_k] / I`` for a zero-dimensional ideal ``I``."""

    def __init__(self, polys: Sequence[MultiPoly]):
        if not polys:
            raise InputError("empty system has no finite quotient")
        self.k = polys[0].nvars
        self.gb = groebner_basis(polys)
        lms = [lm for lm, _ in self.gb]
        self.inconsistent = any(not any(lm) for lm in lms)
        if self.inconsistent:
            self.basis: list[tuple] = []
        else:
            for i in range(self.k):
                if not any(lm[i] and sum(lm) == lm[i] for lm in lms):
                    raise InputError("system is not zero-dimensional")
            self.basis = self._standard_monomials(lms)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.mult = [self._mult_matrix(i) for i in range(self.k)]
        self._trace_vec = None

    def _standard_monomials(self, lms):
        seen = {(0,) * self.k}
        frontier = [(0,) * self.k]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(self.k):
                    u = list(m)
                    u[i] += 1
                    u = tuple(u)
                    if u not in seen and not any(_divides(lm, u) for lm in lms):
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return sorted(seen, key=_grevlex)

    def coords_of(self, p: dict) -> list[Fraction]:
        nf = _normal_form(p, self.gb)
        v = [Fraction(0)] * self.dim
        for e, c in nf.items():
            v[self.index[e]] = c
        return v

    def _mult_matrix(self, i: int) -> list[list[Fraction]]:
        # column j = coordinates of X_i * basis[j]; stored row-major
        cols = []
        for m in self.basis:
            u = list(m)
            u[i] += 1
            cols.append(self.coords_of({tuple(u): Fraction(1)}))
        return [[cols[j][r] for j in range(self.dim)] for r in range(self.dim)]

    @staticmethod
    def apply(mat, v):
        return [sum(a * b for a, b in zip(row, v) if a and b) for row in mat]

    def element(self, p: MultiPoly) -> list[Fraction]:
        return self.coords_of(p.terms)

    def multiply_by(self, p: MultiPoly, v: list[Fraction]) -> list[Fraction]:
        """Coordinates of ``p * v`` using the multiplication matrices."""
        out = [Fraction(0)] * self.dim
        for exp, c in p.terms.items():
            w = v
            for i, e in enumerate(exp):
                for _ in range(e):
                    w = self.apply(self.mult[i], w)
            out = [x + c * y for x, y in zip(out, w)]
        return out

    def trace_vector(self) -> list[Fraction]:
        """``t[m] = trace of multiplication by basis[m]``."""
        if self._trace_vec is None:
            t = []
            for m in self.basis:
                mono = MultiPoly(self.k, {m: 1})
                tr = Fraction(0)
                for j in range(self.dim):
                    e = [Fraction(0)] * self.dim
                    e[j] = Fraction(1)
                    tr += self.multiply_by(mono, e)[j]
                t.append(tr)
            self._trace_vec = t
        return self._trace_vec

    def trace(self, v: list[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(self.trace_vector(), v)), Fraction(0))

    def distinct_solutions(self) -> int:
        """Number of distinct complex solutions: rank of the Hermite trace form."""
        if self.dim == 0:
            return 0
        vecs = []
        for m in self.basis:
            e = [Fraction(0)] * self.dim
            e[self.index[m]] = Fraction(1)
            vecs.append(e)
        rows = []
        for j, mj in enumerate(self.basis):
            row = []
            for mk in self.basis:
                prod = tuple(x + y for x, y in zip(mj, mk))
                row.append(self.trace(self.coords_of({prod: Fraction(1)})))
            rows.append(row)
        return _rank(rows)


def _rank(rows) -> int:
    a = [list(r) for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _charpoly_from_traces(s: list[Fraction], D: int) -> UniPoly:
    """Monic polynomial of degree D whose root power sums are ``s[1..D]``."""
    e = [Fraction(1)]
    for k in range(1, D + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i]
        e.append(acc / k)
    return UniPoly([(-1) ** (D - k) * e[D - k] for k in range(D + 1)])


def separating_forms(k: int):
    """Integer vectors over 0, 1, -1, 2, -2, ... in a fixed order, zero excluded."""
    seq = [0]
    for v in itertools.count(1):
        seq += [v, -v]
        size = len(seq)
        for c in itertools.product(seq, repeat=k):
            if any(c) and max(seq.index(x) for x in c) >= size - 2:
                yield c


def solve_zero_dim(system: Sequence[MultiPoly], budget: int = TRIAL_BUDGET) -> ZeroDimParam:
    """Rational univariate representation of the (finite) solution set of ``system``."""
    if not system:
        raise InputError("solve_zero_dim needs at least one equation")
    k = system[0].nvars
    if any(f.nvars != k for f in system):
        raise InputError("equations have different variable counts")
    if k > MAX_VARIABLES:
        raise InputError(f"{k} variables exceeds the supported maximum of {MAX_VARIABLES}")
    A = QuotientAlgebra(system)
    if A.inconsistent:
        one = UniPoly.const(1)
        return ZeroDimParam(one, one, tuple(UniPoly(()) for _ in range(k)), (1,) + (0,) * (k - 1))
    npts = A.distinct_solutions()
    D = A.dim
    X = [MultiPoly.var(i, k) for i in range(k)]
    for trial, c in enumerate(separating_forms(k)):
        if trial >= budget:
            break
        T = sum((ci * x for ci, x in zip(c, X) if ci), MultiPoly.zero(k))
        powers = [A.element(MultiPoly.const(1, k))]
        for _ in range(D):
            powers.append(A.multiply_by(T, powers[-1]))
        s = [A.trace(w) for w in powers]
        f = _charpoly_from_traces(s, D)
        fred = squarefree_part(f).monic()
        if fred.degree() != npts:
            continue
        Dp = fred.degree()
        a = fred.coeffs
        horner = [UniPoly([a[j] for j in range(i + 1, Dp + 1)]) for i in range(Dp)]

        def g_of(vecs):
            acc = UniPoly(())
            for i in range(Dp):
                acc = acc + horner[i] * A.trace(vecs[i])
            return acc

        q0 = g_of(powers)
        coords = tuple(g_of([A.apply(A.mult[j], w) for w in powers]) for j in range(k))
        param = ZeroDimParam(fred.primitive(), q0, coords, tuple(c))
        if not verify_parametrization(param, system):
            raise InternalError(f"parametrization failed verification for form {c}")
        return param
    raise SolverError(f"no separating linear form among the first {budget} trials")


def verify_parametrization(p: ZeroDimParam, system: Sequence[MultiPoly]) -> bool:
    """Every equation vanishes at ``(q1/q0, ..., qd/q0)`` modulo ``q``."""
    for f in system:
        if f.nvars != len(p.coords):
            raise InputError("dimension mismatch between system and parametrization")
        if p.q.degree() <= 0:
            continue
        if not homogenized_numerator(f, p.q0, p.coords, p.q).is_zero():
            return False
    return True


def bezout_bound(system: Sequence[MultiPoly]) -> int:
    return math.prod(max(f.degree(), 1) for f in system)
