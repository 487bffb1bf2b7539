"""Real algebraic numbers given as ``h(point)`` for a polynomial ``h`` and an encoded point.

Each value carries a squarefree defining polynomial (the characteristic
polynomial of multiplication by the value in ``Q[T]/(q)``) and shrinking
rational enclosures.  Comparison is exact: enclosures are refined until
they separate, and equality is certified when the gcd of the two defining
polynomials has a root in a common interval that isolates both values.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .polycore import MultiPoly, UniPoly, squarefree_part, uni_gcd, uni_inverse_mod, signed_subresultants, variations_at
from .realroots import RealUnivariateRep, _imul, homogenized_numerator, rational_roots


def _newton_sums(q: UniPoly, count: int) -> list[Fraction]:
    """Power sums of the complex roots of ``q`` (with multiplicity), ``s_0..s_{count-1}``."""
    m = q.monic()
    D = m.degree()
    a = m.coeffs  # a[D] == 1
    s = [Fraction(D)]
    for k in range(1, count):
        acc = Fraction(0)
        for i in range(1, min(k, D) + 1):
            acc -= a[D - i] * (s[k - i] if k - i > 0 else 0)
        if k <= D:
            acc -= k * a[D - k]
        s.append(acc)
    return s


def charpoly_mod(v: UniPoly, q: UniPoly) -> UniPoly:
    """Characteristic polynomial of multiplication by ``v`` in ``Q[T]/(q)``."""
    D = q.degree()
    newton = _newton_sums(q, D)
    traces = [Fraction(D)]
    w = UniPoly.const(1)
    for _ in range(D):
        w = (w * v) % q
        traces.append(sum((c * newton[j] for j, c in enumerate(w.coeffs)), Fraction(0)))
    e = [Fraction(1)]
    for k in range(1, D + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * traces[i]
        e.append(acc / k)
    return UniPoly([(-1) ** (D - k) * e[D - k] for k in range(D + 1)])


def _ipow(iv, k):
    out = (Fraction(1), Fraction(1))
    for _ in range(k):
        out = _imul(out, iv)
    if k % 2 == 0 and iv[0] < 0 < iv[1]:
        out = (max(out[0], Fraction(0)), out[1])
    return out


def enclose_poly(h: MultiPoly, boxes) -> tuple[Fraction, Fraction]:
    lo = hi = Fraction(0)
    for exp, c in h.terms.items():
        t = (c, c)
        for iv, e in zip(boxes, exp):
            if e:
                t = _imul(t, _ipow(iv, e))
        lo += t[0]
        hi += t[1]
    return lo, hi


class AlgebraicValue:
    """The real number ``h(x)`` where ``x`` is the point of ``rur``."""

    def __init__(self, h: MultiPoly, rur: RealUnivariateRep):
        self.h = h
        self.rur = rur
        self._width = Fraction(1, 16)

    @cached_property
    def minpoly(self) -> UniPoly:
        r = self.rur
        if r.q.degree() <= 1:
            t = r.root_interval()[0]
            val = self.h(*[c(t) / r.q0(t) for c in r.coords])
            return UniPoly((-val, 1))
        num = homogenized_numerator(self.h, r.q0, r.coords, r.q)
        D = max(self.h.degree(), 0)
        inv = uni_inverse_mod(r.q0, r.q)
        v = (num * (inv ** D % r.q)) % r.q
        return squarefree_part(charpoly_mod(v, r.q)).primitive()

    def exact(self) -> Fraction | None:
        if self.minpoly.degree() == 1:
            c = self.minpoly.coeffs
            return -c[0] / c[1]
        lo, hi = self.enclosure()
        if lo == hi:
            return lo
        cands = rational_roots(self.minpoly)
        while True:
            cands = [r for r in cands if lo <= r <= hi]
            if not cands:
                return None
            if _roots_in_closed(self.minpoly, lo, hi) == 1:
                return cands[0]
            self.refine()
            lo, hi = self.enclosure()

    def enclosure(self, width=None) -> tuple[Fraction, Fraction]:
        w = Fraction(width) if width is not None else self._width
        if self.minpoly.degree() == 1:
            v = -self.minpoly.coeffs[0] / self.minpoly.coeffs[1]
            return (v, v)
        return enclose_poly(self.h, self.rur.coordinate_intervals(w))

    def refine(self):
        self._width /= 16

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 10**12))
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"AlgebraicValue(~{float(self):.12g}, minpoly={self.minpoly.to_text('V')})"


def _roots_in_closed(p: UniPoly, a: Fraction, b: Fraction) -> int:
    if p.degree() <= 0:
        return 0
    s = squarefree_part(p)
    seq = signed_subresultants(s, s.derivative())
    n = variations_at(seq, a) - variations_at(seq, b)
    return n + (1 if s(a) == 0 else 0)


def compare(u: AlgebraicValue, v: AlgebraicValue) -> int:
    """Exact sign of ``u - v``."""
    eu, ev = u.exact(), v.exact()
    if eu is not None and ev is not None:
        return (eu > ev) - (eu < ev)
    g = uni_gcd(u.minpoly, v.minpoly)
    for _ in range(200):
        iu, iv = u.enclosure(), v.enclosure()
        if iu[1] < iv[0]:
            return -1
        if iv[1] < iu[0]:
            return 1
        lo, hi = min(iu[0], iv[0]), max(iu[1], iv[1])
        if g.degree() >= 1 and _roots_in_closed(u.minpoly, lo, hi) == 1 \
                and _roots_in_closed(v.minpoly, lo, hi) == 1 and _roots_in_closed(g, lo, hi) >= 1:
            return 0
        u.refine()
        v.refine()
    raise RuntimeError("algebraic comparison did not terminate")
