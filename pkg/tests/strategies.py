"""Hypothesis strategies shared by the test modules."""
import itertools
from fractions import Fraction

from hypothesis import strategies as st

from symconn.polycore import MultiPoly, UniPoly

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def points(n):
    return st.lists(rationals, min_size=n, max_size=n)


@st.composite
def multipolys(draw, nvars, max_degree=3, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars))
        if sum(exp) > max_degree:
            continue
        terms[tuple(exp)] = draw(rationals)
    return MultiPoly(nvars, terms)


@st.composite
def symmetric_polys(draw, n, max_degree=3):
    """Symmetrize a random polynomial over all permutations."""
    base = draw(multipolys(n, max_degree, 3))
    acc = MultiPoly.zero(n)
    for perm in itertools.permutations(range(n)):
        acc = acc + base.permute(perm)
    return acc


@st.composite
def unipolys(draw, max_degree=8, nonzero=True):
    deg = draw(st.integers(0 if not nonzero else 1, max_degree))
    coeffs = draw(st.lists(small_ints, min_size=deg + 1, max_size=deg + 1))
    if nonzero and coeffs[-1] == 0:
        coeffs[-1] = 1
    return UniPoly(coeffs)


@st.composite
def rooted_unipolys(draw, max_roots=5):
    """Products of linear factors with small rational roots, some repeated."""
    roots = draw(st.lists(st.builds(Fraction, st.integers(-8, 8), st.integers(1, 3)), min_size=1, max_size=max_roots))
    extra = draw(st.sampled_from([UniPoly((1,)), UniPoly((1, 0, 1)), UniPoly((2, 0, 1))]))
    return UniPoly.from_roots(roots) * extra, sorted(set(roots))
