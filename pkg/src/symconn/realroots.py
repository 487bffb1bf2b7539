"""Exact bookkeeping for real roots of univariate polynomials.

Roots are named by Thom encodings (the signs of all derivatives at the
root).  Signs of other polynomials at a root come from Tarski queries and
the incremental sign-determination scheme over adapted products.  A
rational isolating interval for each root is available as well; it is used
for snapping algebraic points to nearby rationals and for comparing
algebraic numbers, never for deciding a sign.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .polycore import (
    InputError,
    MultiPoly,
    UniPoly,
    signed_subresultants,
    squarefree_part,
    uni_gcd,
    variations_at,
    variations_at_infinity,
)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def tarski_query(q: UniPoly, g: UniPoly) -> int:
    """Sum of ``sign(g(t))`` over the distinct real roots ``t`` of ``q``."""
    if q.is_zero():
        raise InputError("tarski_query needs a nonzero polynomial")
    if q.degree() == 0:
        return 0
    r = (q.derivative() * g) % q
    if r.is_zero():
        return 0
    seq = signed_subresultants(q, r)
    lo, hi = variations_at_infinity(seq)
    return lo - hi


def count_real_roots(q: UniPoly) -> int:
    return tarski_query(q, UniPoly.const(1))


@dataclass(frozen=True)
class ThomEncoding:
    """Signs of ``q', q'', ..., q^(deg q)`` at a root of ``q``."""

    signs: tuple[int, ...]

    @property
    def full(self) -> tuple[int, ...]:
        """Signs over ``der(q)`` including the zero taken by ``q`` itself."""
        return (0, *self.signs)

    def __str__(self):
        return "(" + ",".join("+" if s > 0 else "-" if s < 0 else "0" for s in self.signs) + ")"

    @classmethod
    def parse(cls, text: str) -> "ThomEncoding":
        body = text.strip().strip("()")
        table = {"+": 1, "-": -1, "0": 0, "1": 1, "-1": -1}
        try:
            return cls(tuple(table[t.strip()] for t in body.split(",") if t.strip()))
        except KeyError as exc:
            raise InputError(f"cannot parse Thom encoding {text!r}") from exc


def _thom_less(a: ThomEncoding, b: ThomEncoding) -> bool:
    """Root order from Thom encodings of two roots of the same polynomial."""
    sa, sb = a.full, b.full
    for k in range(len(sa) - 1, 0, -1):
        if sa[k] != sb[k]:
            nxt = sa[k + 1] if k + 1 < len(sa) else 1
            return sa[k] < sb[k] if nxt > 0 else sa[k] > sb[k]
    return False


def _solve(matrix: list[list[Fraction]], rhs: list) -> list[Fraction]:
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col] / pv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def _independent_rows(rows: list[list[int]], want: int) -> list[int]:
    """Greedy indices of linearly independent rows (first ``want`` found)."""
    basis: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for pc, b in basis:
            if v[pc]:
                f = v[pc] / b[pc]
                v = [x - f * y for x, y in zip(v, b)]
        pc = next((i for i, x in enumerate(v) if x), None)
        if pc is not None:
            basis.append((pc, v))
            chosen.append(idx)
            if len(chosen) == want:
                break
    return chosen


class SignTable:
    """Realizable sign conditions of a growing polynomial list at roots of ``q``.

    ``conditions`` maps each realizable sign tuple to the number of roots
    realizing it.  :meth:`extend` returns a new table with one more
    polynomial, leaving the original untouched.
    """

    def __init__(self, q: UniPoly, polys=(), _state=None):
        if q.is_zero():
            raise InputError("sign determination needs a nonzero polynomial")
        self.q = q
        if _state is not None:
            self.polys, self.signs, self.ada, self.counts = _state
            return
        r = count_real_roots(q)
        self.polys: tuple[UniPoly, ...] = ()
        self.signs: list[tuple[int, ...]] = [()] if r else []
        self.ada: list[tuple[int, ...]] = [()] if r else []
        self.counts: list[int] = [r] if r else []
        table = self
        for p in polys:
            table = table.extend(p)
        self.polys, self.signs, self.ada, self.counts = table.polys, table.signs, table.ada, table.counts

    @property
    def conditions(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.signs, self.counts))

    def _product(self, alpha: tuple[int, ...], extra: UniPoly | None = None, e: int = 0) -> UniPoly:
        prod = UniPoly.const(1)
        for p, k in zip(self.polys, alpha):
            for _ in range(k):
                prod = (prod * p) % self.q
        if extra is not None:
            for _ in range(e):
                prod = (prod * extra) % self.q
        return prod

    def extend(self, p: UniPoly) -> "SignTable":
        p = p % self.q if self.q.degree() > 0 else p
        polys = self.polys + (p,)
        if not self.signs:
            return SignTable(self.q, _state=(polys, [], [], []))
        matrix = [[_mono_sign(a, s) for s in self.signs] for a in self.ada]
        taq = {0: [Fraction(c) for c in _matvec(matrix, self.counts)]}
        for e in (1, 2):
            taq[e] = [Fraction(tarski_query(self.q, self._product(a, p, e))) for a in self.ada]
        v = {e: _solve(matrix, taq[e]) for e in (0, 1, 2)}
        new_signs, new_counts = [], []
        for i, s in enumerate(self.signs):
            c0 = v[0][i] - v[2][i]
            cp = (v[1][i] + v[2][i]) / 2
            cm = (v[2][i] - v[1][i]) / 2
            for sign, c in ((0, c0), (1, cp), (-1, cm)):
                if c:
                    if c < 0 or c.denominator != 1:
                        raise AssertionError("sign determination produced a non-count")
                    new_signs.append(s + (sign,))
                    new_counts.append(int(c))
        cand = [a + (e,) for a in self.ada for e in (0, 1, 2)]
        rows = [[_mono_sign(a, s) for s in new_signs] for a in cand]
        keep = _independent_rows(rows, len(new_signs))
        new_ada = [cand[i] for i in keep]
        return SignTable(self.q, _state=(polys, new_signs, new_ada, new_counts))


def _mono_sign(alpha, sigma) -> int:
    v = 1
    for a, s in zip(alpha, sigma):
        if a:
            v *= s ** a
    return v


def _matvec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def _derivative_tower(q: UniPoly) -> list[UniPoly]:
    return [q.derivative(k) for k in range(1, q.degree() + 1)]


@lru_cache(maxsize=512)
def _thom_table(q: UniPoly) -> SignTable:
    return SignTable(q, _derivative_tower(q))


def thom_encodings(q: UniPoly) -> list[ThomEncoding]:
    """Thom encodings of the real roots of ``q`` in increasing root order."""
    if q.is_zero():
        raise InputError("thom_encodings needs a nonzero polynomial")
    if q.degree() <= 0:
        return []
    table = _thom_table(q)
    encs = [ThomEncoding(s) for s in table.signs]
    # insertion sort with the Thom comparison; lists are short
    out: list[ThomEncoding] = []
    for e in encs:
        pos = 0
        while pos < len(out) and _thom_less(out[pos], e):
            pos += 1
        out.insert(pos, e)
    return out


def signs_at_roots(q: UniPoly, p: UniPoly) -> dict[ThomEncoding, int]:
    """Sign of ``p`` at every real root of ``q``, keyed by Thom encoding."""
    if q.degree() <= 0:
        return {}
    table = _thom_table(q).extend(p)
    return {ThomEncoding(s[:-1]): s[-1] for s in table.signs}


def sign_at(q: UniPoly, zeta: ThomEncoding, p: UniPoly) -> int:
    """Exact sign of ``p`` at the root of ``q`` encoded by ``zeta``."""
    signs = signs_at_roots(q, p)
    if zeta not in signs:
        raise InputError(f"{zeta} is not the Thom encoding of a real root of {q.to_text()}")
    return signs[zeta]


# ---------------------------------------------------------------------------
# Isolation (rational intervals), used for snapping and comparisons
# ---------------------------------------------------------------------------


def root_bound(q: UniPoly) -> Fraction:
    lc = abs(q.lc())
    return 1 + max((abs(c) / lc for c in q.coeffs[:-1]), default=Fraction(0))


def isolate_roots(q: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals, one per distinct real root, in increasing order.

    Either ``a == b`` (an exact rational root) or ``a < b`` with the
    squarefree part changing sign strictly between ``a`` and ``b``.
    """
    if q.is_zero():
        raise InputError("cannot isolate roots of the zero polynomial")
    if q.degree() <= 0:
        return []
    s = squarefree_part(q)
    seq = signed_subresultants(s, s.derivative())
    bound = root_bound(s)
    out: list[tuple[Fraction, Fraction]] = []

    def count(a, b):  # roots in (a, b]
        return variations_at(seq, a) - variations_at(seq, b)

    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        k = count(a, b)
        if k == 0:
            continue
        if k == 1:
            if s(b) == 0:
                out.append((b, b))
            else:
                out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


def refine_interval(q: UniPoly, iv: tuple[Fraction, Fraction], width) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of the squarefree part of ``q`` below ``width``."""
    a, b = iv
    if a == b:
        return iv
    s = squarefree_part(q)
    sb = _sign(s(b))
    while b - a > width:
        m = (a + b) / 2
        sm = _sign(s(m))
        if sm == 0:
            return (m, m)
        if sm == sb:
            b = m
        else:
            a = m
    return (a, b)


# ---------------------------------------------------------------------------
# Rational interval arithmetic on univariate data
# ---------------------------------------------------------------------------


def _imul(x, y):
    p = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return (min(p), max(p))


def interval_eval(p: UniPoly, iv: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    acc = (Fraction(0), Fraction(0))
    for c in reversed(p.coeffs):
        acc = _imul(acc, iv)
        acc = (acc[0] + c, acc[1] + c)
    return acc


# ---------------------------------------------------------------------------
# Real univariate representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealUnivariateRep:
    """Point ``(q1(t)/q0(t), ..., qm(t)/q0(t))`` at the root ``t`` of ``q`` named by ``thom``."""

    q: UniPoly
    q0: UniPoly
    coords: tuple[UniPoly, ...]
    thom: ThomEncoding
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if uni_gcd(self.q, self.q0).degree() > 0:
            raise InputError("gcd(q, q0) must be 1")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def root_index(self) -> int:
        encs = thom_encodings(self.q)
        if self.thom not in encs:
            raise InputError(f"{self.thom} is not realized by {self.q.to_text()}")
        return encs.index(self.thom)

    def root_interval(self, width=None) -> tuple[Fraction, Fraction]:
        key = ("iv",)
        if key not in self._cache:
            self._cache[key] = isolate_roots(self.q)[self.root_index()]
        iv = self._cache[key]
        if width is not None:
            iv = refine_interval(self.q, iv, width)
            self._cache[key] = iv
        return iv

    def coordinate_intervals(self, width) -> list[tuple[Fraction, Fraction]]:
        """Rational enclosures of every coordinate, each narrower than ``width``."""
        w = Fraction(width)
        tw = w
        while True:
            iv = self.root_interval(tw)
            den = interval_eval(self.q0, iv)
            if den[0] <= 0 <= den[1] and iv[0] != iv[1]:
                tw /= 4
                continue
            out = []
            for qi in self.coords:
                num = interval_eval(qi, iv)
                if iv[0] == iv[1]:
                    v = num[0] / den[0]
                    out.append((v, v))
                    continue
                cands = [num[0] / den[0], num[0] / den[1], num[1] / den[0], num[1] / den[1]]
                out.append((min(cands), max(cands)))
            if all(b - a <= w for a, b in out):
                return out
            tw /= 4

    def rational_value(self) -> list[Fraction] | None:
        """Exact coordinates when the selected root is rational, else None."""
        iv = self.root_interval()
        if iv[0] != iv[1]:
            # a linear squarefree factor would have been isolated exactly by bisection
            s = squarefree_part(self.q)
            for a, b in [iv]:
                lin = _rational_root_in(s, a, b)
                if lin is None:
                    return None
                iv = (lin, lin)
        t = iv[0]
        q0 = self.q0(t)
        return [qi(t) / q0 for qi in self.coords]

    def approx(self, width=Fraction(1, 10**12)) -> list[Fraction]:
        return [(a + b) / 2 for a, b in self.coordinate_intervals(width)]

    def to_json(self) -> dict:
        return {
            "q": self.q.to_text(),
            "q0": self.q0.to_text(),
            "coords": [c.to_text() for c in self.coords],
            "thom": str(self.thom),
            "approx": [float(v) for v in self.approx(Fraction(1, 10**9))],
        }


def _rational_root_in(s: UniPoly, a: Fraction, b: Fraction) -> Fraction | None:
    """The root of ``s`` in ``(a, b)`` if it is rational (rational-root test)."""
    p = s.primitive()
    lead, const = int(p.lc()), int(p.coeffs[0])
    if const == 0:
        return Fraction(0) if a < 0 < b else None
    for num in _divisors(abs(const)):
        for den in _divisors(abs(lead)):
            for sgn in (1, -1):
                r = Fraction(sgn * num, den)
                if a < r < b and p(r) == 0:
                    return r
    return None


def rational_roots(s: UniPoly) -> list[Fraction]:
    """All rational roots of ``s`` (rational-root test on the primitive form)."""
    if s.degree() <= 0:
        return []
    p = s.primitive()
    out = set()
    k = 0
    while not p.coeffs[k]:
        k += 1
    if k:
        out.add(Fraction(0))
        p = UniPoly._raw(list(p.coeffs[k:]))
    lead, const = int(p.lc()), int(p.coeffs[0])
    for num in _divisors(abs(const)):
        for den in _divisors(abs(lead)):
            for sgn in (1, -1):
                r = Fraction(sgn * num, den)
                if p(r) == 0:
                    out.add(r)
    return sorted(out)


def _divisors(n: int) -> list[int]:
    if n > 10**12:
        return []
    small = [k for k in range(1, int(n ** 0.5) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def homogenized_numerator(f: MultiPoly, q0: UniPoly, coords: Sequence[UniPoly], modulus: UniPoly | None = None) -> UniPoly:
    """``q0^deg(f) * f(q1/q0, ..., qm/q0)`` as a polynomial in ``T``."""
    if f.nvars != len(coords):
        raise InputError(f"polynomial in {f.nvars} variables, point of dimension {len(coords)}")
    if f.is_zero():
        return UniPoly(())
    D = f.degree()
    red = (lambda p: p % modulus) if modulus is not None and modulus.degree() > 0 else (lambda p: p)
    pw: dict = {}

    def power(base_idx, e):
        key = (base_idx, e)
        if key not in pw:
            base = q0 if base_idx < 0 else coords[base_idx]
            pw[key] = UniPoly.const(1) if e == 0 else red(power(base_idx, e - 1) * base)
        return pw[key]

    total = UniPoly(())
    for exp, c in f.terms.items():
        term = UniPoly.const(c)
        for i, e in enumerate(exp):
            if e:
                term = red(term * power(i, e))
        term = red(term * power(-1, D - sum(exp)))
        total = total + term
    return red(total)


def rur_eval_sign(r: RealUnivariateRep, f: MultiPoly) -> int:
    """Sign of ``f`` at the point represented by ``r``."""
    if f.nvars != r.dim:
        raise InputError(f"polynomial in {f.nvars} variables, point of dimension {r.dim}")
    if f.is_zero():
        return 0
    num = homogenized_numerator(f, r.q0, r.coords, r.q)
    s_num = sign_at(r.q, r.thom, num)
    if f.degree() % 2 == 0 or s_num == 0:
        return s_num
    return s_num * sign_at(r.q, r.thom, r.q0)


def chamber_filter(q: UniPoly, q0: UniPoly, coords: Sequence[UniPoly]) -> list[ThomEncoding]:
    """Encodings of roots where ``q1/q0 <= q2/q0 <= ... <= qm/q0``."""
    if q.degree() <= 0:
        return []
    table = _thom_table(q).extend(q0)
    for a, b in zip(coords, coords[1:]):
        table = table.extend(a - b)
    out = []
    nder = q.degree()
    for s in table.signs:
        s0, diffs = s[nder], s[nder + 1:]
        if s0 > 0 and all(v <= 0 for v in diffs) or s0 < 0 and all(v >= 0 for v in diffs):
            out.append(ThomEncoding(s[:nder]))
    order = thom_encodings(q)
    return sorted(out, key=order.index)
