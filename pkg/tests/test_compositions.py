from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symconn.compositions import (
    Composition, FamilyPattern, all_compositions, comp_of_point, enumerate_compositions,
    expand_point, join, matches_pattern, minimizer_family, precedes, substitute,
    substitute_symmetric, symmetric_coefficients,
)
from symconn.polycore import InputError, MultiPoly, poly_eval, power_sum

from strategies import multipolys, rationals, symmetric_polys

C = Composition


def test_eight_compositions_of_four():
    got = set(all_compositions(4))
    want = {C(p) for p in [(4,), (3, 1), (1, 3), (2, 2), (2, 1, 1), (1, 2, 1), (1, 1, 2), (1, 1, 1, 1)]}
    assert got == want and len(all_compositions(4)) == 8


def test_enumerate_examples():
    assert enumerate_compositions(3, 2) == [C((1, 2)), C((2, 1))]
    assert enumerate_compositions(5, 5) == [C((1,) * 5)]
    with pytest.raises(InputError):
        enumerate_compositions(3, 4)


@pytest.mark.parametrize("n", range(1, 13))
def test_enumeration_counts(n):
    for length in range(1, n + 1):
        assert len(enumerate_compositions(n, length)) == comb(n - 1, length - 1)


def test_precedes_examples():
    assert precedes((1, 2, 1), (3, 1))
    assert precedes((1, 2, 1), (1, 3))
    assert precedes((1, 2, 1), (4,))
    assert not precedes((2, 1, 1), (1, 1, 1, 1))


def test_join_examples():
    assert join((2, 1, 1), (1, 1, 1, 1)) == C((2, 1, 1))
    assert join((1, 2), (2, 1)) == C((3,))
    assert join((1, 2, 1), (1, 2, 1)) == C((1, 2, 1))


def test_comp_of_point_examples():
    assert comp_of_point([-1, 5, 5, -3]) == C((1, 2, 1))
    assert comp_of_point([1, 1, 2]) == C((2, 1))
    assert comp_of_point([0, 0, 0, 0]) == C((4,))


def test_substitute_examples():
    f = MultiPoly.parse("X3^3+X1*X2-X4", 4)
    assert substitute(f, (1, 2, 1)) == MultiPoly.parse("X1*X2+X2^3-X3", 3)
    assert substitute(power_sum(1, 5), (2, 3)) == MultiPoly.parse("2*X1+3*X2", 2)
    assert substitute(power_sum(2, 3), (2, 1)) == MultiPoly.parse("2*X1^2+X2^2", 2)


def test_expand_point_examples():
    assert expand_point([1, 2], (2, 1)) == [1, 1, 2]
    assert expand_point([5], (3,)) == [5, 5, 5]


def test_minimizer_family_examples():
    assert minimizer_family(3, 2) == [C((1, 2))]
    assert minimizer_family(5, 3) == [C((1, 3, 1))]
    assert minimizer_family(4, 1) == [C((4,))]


def test_pattern_variants():
    # the min pattern pins positions d-1, d-3, ... (1-based)
    assert minimizer_family(5, 3, FamilyPattern.MIN) == [C((1, 1, 3)), C((2, 1, 2)), C((3, 1, 1))]
    assert minimizer_family(6, 4, "min") == minimizer_family(6, 4, "front")
    assert minimizer_family(5, 2, "back") == [C((4, 1))]


def test_family_size_closed_form():
    for n in range(2, 31):
        for d in range(2, n + 1):
            want = comb(n - (d + 1) // 2 - 1, d // 2 - 1) if n - (d + 1) // 2 - 1 >= 0 else 0
            assert len(minimizer_family(n, d)) == want, (n, d)


comps = st.integers(1, 8).flatmap(lambda n: st.sampled_from(all_compositions(n)))


def _same_n_triples():
    return st.integers(1, 8).flatmap(
        lambda n: st.tuples(*[st.sampled_from(all_compositions(n))] * 3))


@settings(max_examples=200, deadline=None)
@given(_same_n_triples())
def test_precedes_is_partial_order(t):
    a, b, c = t
    assert precedes(a, a)
    if precedes(a, b) and precedes(b, a):
        assert a == b
    if precedes(a, b) and precedes(b, c):
        assert precedes(a, c)


@settings(max_examples=150, deadline=None)
@given(_same_n_triples())
def test_join_is_least_upper_bound(t):
    a, b, _ = t
    j = join(a, b)
    assert precedes(a, j) and precedes(b, j)
    uppers = [c for c in all_compositions(a.n) if precedes(a, c) and precedes(b, c)]
    assert all(precedes(j, c) for c in uppers)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.sampled_from(all_compositions(n)), multipolys(n, 3, 4))).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.lists(rationals, min_size=len(t[0]), max_size=len(t[0])))))
def test_substitute_commutes_with_expand(case):
    lam, f, z = case
    assert poly_eval(substitute(f, lam), z) == poly_eval(f, expand_point(z, lam))


@settings(max_examples=100, deadline=None)
@given(comps.flatmap(lambda lam: st.tuples(st.just(lam), st.lists(st.integers(-3, 3), min_size=len(lam), max_size=len(lam)))))
def test_expand_round_trip(case):
    lam, z = case
    c = comp_of_point(expand_point(z, lam))
    assert precedes(lam, c)
    strictly_increasing = all(a < b for a, b in zip(z, z[1:]))
    assert (c == lam) == all(a != b for a, b in zip(z, z[1:]))
    if strictly_increasing:
        assert c == lam


def test_matches_pattern():
    assert matches_pattern((1, 2), 2, "front")
    assert matches_pattern((3,), 2, "front")
    assert not matches_pattern((2, 1), 2, "front")
    assert not matches_pattern((2, 2), 3, "front")
    assert matches_pattern((2, 2), 3, "min")


def test_composition_text():
    assert str(C((1, 2, 1))) == "(1,2,1)"
    assert C.parse("(1,2,1)") == C((1, 2, 1))
    with pytest.raises(InputError):
        C((1, 0))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(symmetric_polys(n), st.sampled_from(all_compositions(n)))))
def test_symmetric_substitution_agrees(case):
    f, lam = case
    assert substitute_symmetric(f, lam) == substitute(f, lam)


def test_symmetric_coefficients():
    f = power_sum(2, 3) * MultiPoly.const(2, 3) + MultiPoly.parse("X1*X2+X1*X3+X2*X3", 3)
    assert symmetric_coefficients(f) == {(2,): 2, (1, 1): 1}
