"""Compositions of n: enumeration, refinement order, joins and faces.

A composition ``(l1, ..., lk)`` indexes the face of the chamber
``X1 <= ... <= Xn`` where the coordinates inside each consecutive block of
sizes ``l1, ..., lk`` coincide.
"""
from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from math import factorial
from typing import Sequence

from .polycore import InputError, MultiPoly


class Composition(tuple):
    """Immutable tuple of positive parts."""

    def __new__(cls, parts):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise InputError("a composition needs at least one part")
        if any(p < 1 for p in parts):
            raise InputError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def cuts(self) -> frozenset[int]:
        """Positions ``1..n-1`` after which a new block starts."""
        out, acc = [], 0
        for p in self[:-1]:
            acc += p
            out.append(acc)
        return frozenset(out)

    @classmethod
    def from_cuts(cls, n: int, cuts) -> "Composition":
        pts = [0, *sorted(cuts), n]
        return cls(b - a for a, b in zip(pts, pts[1:]))

    def __str__(self):
        return "(" + ",".join(str(p) for p in self) + ")"

    def __repr__(self):
        return f"Composition{tuple(self)}"

    @classmethod
    def parse(cls, text: str) -> "Composition":
        body = text.strip().strip("()")
        try:
            return cls(int(t) for t in body.split(",") if t.strip())
        except ValueError as exc:
            raise InputError(f"cannot parse composition {text!r}") from exc


class FamilyPattern(enum.Enum):
    """Which parts of a length-d composition are pinned to 1.

    ``FRONT`` pins positions 1, 3, 5, ...; ``BACK`` pins d, d-2, d-4, ...;
    ``MIN`` pins d-1, d-3, ....  ``MIN`` is where the chamber minimizer of
    ``p_{d+1}`` lives (checked against the brute-force scan in
    :mod:`symconn.vandermonde`); it agrees with ``FRONT`` for even ``d``.
    For odd ``d`` the ``FRONT``/``BACK`` family carries the maximizers.
    """

    FRONT = "front"
    BACK = "back"
    MIN = "min"


def pinned_positions(d: int, pattern: "FamilyPattern | str") -> set[int]:
    """0-based positions fixed to 1 in a length-``d`` family member."""
    pattern = FamilyPattern(pattern)
    if pattern is FamilyPattern.FRONT:
        return set(range(0, d, 2))
    if pattern is FamilyPattern.BACK:
        return set(range(d - 1, -1, -2))
    return set(range(d - 2, -1, -2))


def enumerate_compositions(n: int, length: int) -> list[Composition]:
    """All compositions of ``n`` with exactly ``length`` parts, lexicographic."""
    if n < 1 or length < 1:
        raise InputError("need n >= 1 and length >= 1")
    if length > n:
        raise InputError(f"no compositions of {n} into {length} parts")
    out = []
    for cuts in itertools.combinations(range(1, n), length - 1):
        out.append(Composition.from_cuts(n, cuts))
    out.sort()
    return out


def all_compositions(n: int) -> list[Composition]:
    return [c for k in range(1, n + 1) for c in enumerate_compositions(n, k)]


def minimizer_family(n: int, d: int, pattern: FamilyPattern | str = FamilyPattern.FRONT) -> list[Composition]:
    """Length-``d`` compositions of ``n`` with every other part pinned to 1.

    With the default ``FRONT`` pattern the family has
    ``binomial(n - ceil(d/2) - 1, floor(d/2) - 1)`` members for ``d >= 2``.
    """
    pattern = FamilyPattern(pattern)
    if d < 1 or n < 1:
        raise InputError("need n >= 1 and d >= 1")
    if d > n:
        raise InputError(f"d={d} exceeds n={n}")
    if d == 1:
        return [Composition((n,))]
    pinned = pinned_positions(d, pattern)
    free = [i for i in range(d) if i not in pinned]
    remaining = n - len(pinned)
    if remaining < len(free):
        return []
    out = []
    for sub in enumerate_compositions(remaining, len(free)):
        parts = [1] * d
        for i, v in zip(free, sub):
            parts[i] = v
        out.append(Composition(parts))
    return sorted(out)


def _check_same_n(lam: Composition, mu: Composition):
    if lam.n != mu.n:
        raise InputError(f"compositions of different integers: {lam} and {mu}")


def precedes(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``lam <= mu``: mu is obtained from lam by merging consecutive parts."""
    lam, mu = Composition(lam), Composition(mu)
    _check_same_n(lam, mu)
    return mu.cuts() <= lam.cuts()


def join(lam: Sequence[int], mu: Sequence[int]) -> Composition:
    """Least common coarsening of ``lam`` and ``mu``."""
    lam, mu = Composition(lam), Composition(mu)
    _check_same_n(lam, mu)
    return Composition.from_cuts(lam.n, lam.cuts() & mu.cuts())


def comp_of_point(x: Sequence) -> Composition:
    """Run lengths of consecutive equal coordinates (input need not be sorted)."""
    if len(x) == 0:
        raise InputError("comp_of_point of an empty vector")
    parts = [1]
    for a, b in zip(x, x[1:]):
        if a == b:
            parts[-1] += 1
        else:
            parts.append(1)
    return Composition(parts)


def block_values(x: Sequence, lam: Sequence[int]) -> list:
    """Inverse of :func:`expand_point` for points constant on blocks of ``lam``."""
    lam = Composition(lam)
    if len(x) != lam.n:
        raise InputError("point length does not match composition")
    out, pos = [], 0
    for p in lam:
        block = x[pos:pos + p]
        if any(v != block[0] for v in block):
            raise InputError(f"point is not constant on the blocks of {lam}")
        out.append(block[0])
        pos += p
    return out


def expand_point(z: Sequence, lam: Sequence[int]) -> list:
    lam = Composition(lam)
    if len(z) != len(lam):
        raise InputError(f"point of length {len(z)} for composition of length {len(lam)}")
    out = []
    for v, p in zip(z, lam):
        out.extend([v] * p)
    return out


def matches_pattern(comp: Sequence[int], d: int, pattern: FamilyPattern | str) -> bool:
    """True if ``comp`` is a coarsening of some member of the length-``d`` family."""
    comp = Composition(comp)
    if len(comp) > d:
        return False
    return any(precedes(lam, comp) for lam in minimizer_family(comp.n, d, pattern))


def substitute(f: MultiPoly, lam: Sequence[int]) -> MultiPoly:
    """``f`` with the coordinates of block ``i`` of ``lam`` identified to ``X_i``."""
    lam = Composition(lam)
    if lam.n != f.nvars:
        raise InputError(f"composition of {lam.n} for a polynomial in {f.nvars} variables")
    block_of = []
    for i, p in enumerate(lam):
        block_of.extend([i] * p)
    k = len(lam)
    terms: dict = {}
    for exp, c in f.terms.items():
        new = [0] * k
        for j, e in enumerate(exp):
            new[block_of[j]] += e
        key = tuple(new)
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(k, terms)


def _partitions(total: int, max_part: int, max_len: int):
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first, max_len - 1):
            yield (first,) + rest


def symmetric_coefficients(f: MultiPoly) -> dict[tuple, Fraction]:
    """Coefficient of ``x^mu`` for every partition ``mu`` (the monomial basis of symmetric ``f``)."""
    n = f.nvars
    out = {}
    for total in range(max(f.degree(), 0) + 1):
        for mu in _partitions(total, total, n):
            c = f.terms.get(mu + (0,) * (n - len(mu)))
            if c:
                out[mu] = c
    return out


def _blocks_of_orbit(mu: tuple, lam: Composition):
    """Exponents of the monomial symmetric function ``m_mu`` after block identification.

    Yields ``(exponent, count)`` where ``count`` is the number of monomials of
    ``m_mu`` collapsing onto ``exponent``.  Each distinct way of sharing the parts
    of ``mu`` among the blocks is counted by a multinomial per block (the zero
    exponents fill the remaining slots).
    """
    k = len(lam)
    seen = set()
    for assign in itertools.product(range(k), repeat=len(mu)):
        blocks = [[] for _ in range(k)]
        for part, b in zip(mu, assign):
            blocks[b].append(part)
        key = tuple(tuple(sorted(b)) for b in blocks)
        if key in seen:
            continue
        seen.add(key)
        count = 1
        for size, parts in zip(lam, key):
            if len(parts) > size:
                count = 0
                break
            denom = factorial(size - len(parts))
            for v in set(parts):
                denom *= factorial(parts.count(v))
            count *= factorial(size) // denom
        if count:
            yield tuple(sum(b) for b in key), count


def substitute_symmetric(f: MultiPoly, lam: Sequence[int], coeffs: dict | None = None) -> MultiPoly:
    """``substitute(f, lam)`` for symmetric ``f`` without touching every term.

    Only the sorted monomials of ``f`` are read, so the cost does not grow with
    the number of terms.  The result is wrong if ``f`` is not symmetric.
    """
    lam = Composition(lam)
    if lam.n != f.nvars:
        raise InputError(f"composition of {lam.n} for a polynomial in {f.nvars} variables")
    coeffs = symmetric_coefficients(f) if coeffs is None else coeffs
    terms: dict = {}
    for mu, c in coeffs.items():
        for exp, count in _blocks_of_orbit(mu, lam):
            terms[exp] = terms.get(exp, Fraction(0)) + c * count
    return MultiPoly(len(lam), terms)
