"""The d-Vandermonde map and the p_{d+1}-minimizer on a chamber fiber.

The minimizer of ``p_{d+1}`` over ``{x : p_1(x) = a_1, ..., p_d(x) = a_d}``
intersected with ``X1 <= ... <= Xn`` has at most ``d`` distinct
coordinates and lies on a face indexed by a member of
:func:`~symconn.compositions.minimizer_family`.  :func:`mv_minimizer`
solves the face systems of that family, keeps the chamber points and
returns the exact minimum.  :func:`brute_force_minimizer` scans every face
of dimension at most ``d`` and is the reference used in tests.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebraic import AlgebraicValue, compare
from .compositions import Composition, FamilyPattern, enumerate_compositions, matches_pattern, minimizer_family, substitute
from .polycore import InputError, InternalError, MultiPoly, as_fraction, power_sum
from .realroots import RealUnivariateRep, rur_eval_sign
from .zerodim import solve_zero_dim, weighted_power_system

log = logging.getLogger(__name__)

ORACLE_MAX_N = 8
ORACLE_MAX_D = 3


def vandermonde_map(x: Sequence, d: int) -> list[Fraction]:
    """``(p_1(x), ..., p_d(x))``."""
    if d < 1 or d > len(x):
        raise InputError(f"need 1 <= d <= n, got d={d}, n={len(x)}")
    xs = [as_fraction(v) for v in x]
    return [sum(v ** i for v in xs) for i in range(1, d + 1)]


@dataclass
class VandermondePoint:
    """A chamber point on a fiber, in full and in face coordinates."""

    rur: RealUnivariateRep          # n coordinates (blocks repeated)
    local: RealUnivariateRep        # len(lam) coordinates
    lam: Composition
    fiber: tuple[Fraction, ...]
    value: AlgebraicValue = field(repr=False)

    @property
    def n(self) -> int:
        return self.lam.n

    def comp(self) -> Composition:
        """Multiplicity pattern of the point, decided exactly."""
        z = self.local
        parts = [self.lam[0]]
        for i in range(len(self.lam) - 1):
            diff = MultiPoly.var(i, z.dim) - MultiPoly.var(i + 1, z.dim)
            if rur_eval_sign(z, diff) == 0:
                parts[-1] += self.lam[i + 1]
            else:
                parts.append(self.lam[i + 1])
        return Composition(parts)

    def to_json(self) -> dict:
        return {
            "lambda": str(self.lam),
            "fiber": [str(v) for v in self.fiber],
            "point": self.rur.to_json(),
            "value_minpoly": self.value.minpoly.to_text("V"),
            "value_approx": float(self.value),
        }


def _candidates(lam: Composition, a: Sequence[Fraction], d: int) -> list[VandermondePoint]:
    system = weighted_power_system(lam, a)
    param = solve_zero_dim(system)
    h = substitute(power_sum(d + 1, lam.n), lam)
    out = []
    for z in param.chamber_points():
        full = []
        for qi, w in zip(z.coords, lam):
            full.extend([qi] * w)
        rur = RealUnivariateRep(z.q, z.q0, tuple(full), z.thom)
        out.append(VandermondePoint(rur, z, lam, tuple(a), AlgebraicValue(h, z)))
    return out


@functools.lru_cache(maxsize=4096)
def _cached_candidates(lam, a, d):
    return _candidates(lam, a, d)


def _select_min(cands: list[VandermondePoint]) -> VandermondePoint:
    best = cands[0]
    for c in cands[1:]:
        s = compare(c.value, best.value)
        if s < 0 or s == 0 and tuple(c.lam) < tuple(best.lam):
            best = c
    return best


def mv_minimizer(a: Sequence, n: int, pattern: FamilyPattern | str = FamilyPattern.MIN) -> VandermondePoint:
    """Chamber minimizer of ``p_{d+1}`` on the fiber over ``a`` (``d = len(a)``)."""
    a = tuple(as_fraction(v) for v in a)
    d = len(a)
    if d < 1 or d > n:
        raise InputError(f"need 1 <= d <= n, got d={d}, n={n}")
    cands: list[VandermondePoint] = []
    for lam in minimizer_family(n, d, pattern):
        cands.extend(_cached_candidates(lam, a, d))
    if not cands:
        log.warning("no chamber point on the %s family for a=%s; scanning all faces", FamilyPattern(pattern).value, a)
        for length in range(d, 0, -1):
            for lam in enumerate_compositions(n, length):
                cands.extend(_cached_candidates(lam, a, d))
            if cands:
                break
    if not cands:
        raise InternalError(f"fiber over {a} has no chamber point on any face of dimension <= {d}")
    return _select_min(cands)


def brute_force_minimizer(a: Sequence, n: int) -> list[VandermondePoint]:
    """Every chamber point on every face of dimension ``<= d`` of the fiber, with its value."""
    a = tuple(as_fraction(v) for v in a)
    d = len(a)
    if n > ORACLE_MAX_N or d > ORACLE_MAX_D:
        raise InputError(f"oracle scale is n <= {ORACLE_MAX_N}, d <= {ORACLE_MAX_D}")
    if d < 1 or d > n:
        raise InputError(f"need 1 <= d <= n, got d={d}, n={n}")
    out = []
    for length in range(1, d + 1):
        for lam in enumerate_compositions(n, length):
            out.extend(_candidates(lam, a, d))
    return out


def brute_force_min(cands: list[VandermondePoint]) -> list[VandermondePoint]:
    """All candidates attaining the minimal value."""
    best = _select_min(cands)
    return [c for c in cands if compare(c.value, best.value) == 0]


class PatternMismatch(InternalError):
    """A brute-force minimizer lies outside the configured family."""


def check_family_pattern(a: Sequence, n: int, pattern: FamilyPattern | str) -> list[Composition]:
    """Compositions of the brute-force minimizers, raising if any misses the family.

    A minimizer matches when its multiplicity pattern coarsens some member of
    ``minimizer_family(n, d, pattern)``.
    """
    best = brute_force_min(brute_force_minimizer(a, n))
    comps = [c.comp() for c in best]
    d = len(a)
    for c, comp in zip(best, comps):
        if not matches_pattern(comp, d, pattern):
            fam = minimizer_family(n, d, pattern)
            raise PatternMismatch(
                f"fiber a={[str(v) for v in c.fiber]}, n={n}: minimizer pattern {comp} "
                f"is not covered by the {FamilyPattern(pattern).value} family {[str(f) for f in fam]}")
    return comps
