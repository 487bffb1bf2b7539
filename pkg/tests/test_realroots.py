from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symconn.polycore import InputError, MultiPoly, UniPoly
from symconn.realroots import (
    RealUnivariateRep, ThomEncoding, chamber_filter, count_real_roots, isolate_roots,
    refine_interval, rur_eval_sign, sign_at, signs_at_roots, tarski_query, thom_encodings,
)

from strategies import rooted_unipolys, unipolys

U = UniPoly.parse


def test_tarski_query_examples():
    assert tarski_query(U("T^2-2"), U("1")) == 2
    assert tarski_query(U("T^2-2"), U("T")) == 0
    assert tarski_query(U("T^2+1"), U("1")) == 0
    with pytest.raises(InputError):
        tarski_query(UniPoly(()), U("1"))


def test_thom_sqrt2():
    encs = thom_encodings(U("T^2-2"))
    assert len(encs) == 2
    assert str(encs[1]) == "(+,+)"
    assert str(encs[0]) == "(-,+)"


def test_thom_no_roots_and_triple_root():
    assert thom_encodings(U("T^2+1")) == []
    (enc,) = thom_encodings(U("(T-1)^3"))
    assert enc.signs == (0, 0, 1)
    with pytest.raises(InputError):
        thom_encodings(UniPoly(()))


def test_sign_at_examples():
    q = U("T^2-2")
    plus = ThomEncoding.parse("(+,+)")
    assert sign_at(q, plus, U("T-1")) == 1
    assert sign_at(q, plus, U("3*T-1")) == 1
    for enc in thom_encodings(q):
        assert sign_at(q, enc, q) == 0
    with pytest.raises(InputError):
        sign_at(q, ThomEncoding.parse("(+,-)"), U("T"))


def _sqrt2_rep():
    q = U("T^2-2")
    return RealUnivariateRep(q, U("2*T"), (U("T"), U("3*T-1")), ThomEncoding.parse("(+,+)"))


def test_rur_eval_sign_examples():
    r = _sqrt2_rep()
    X1 = MultiPoly.var(0, 2)
    assert rur_eval_sign(r, X1) == 1
    assert rur_eval_sign(r, MultiPoly.zero(2)) == 0
    assert rur_eval_sign(r, 2 * X1 - 1) == 0
    # second coordinate is 3/2 - sqrt(2)/4
    X2 = MultiPoly.var(1, 2)
    assert rur_eval_sign(r, X2 - MultiPoly.const(Fraction(3, 2), 2)) == -1
    with pytest.raises(InputError):
        rur_eval_sign(r, MultiPoly.var(0, 3))


def test_rep_requires_coprime_denominator():
    with pytest.raises(InputError):
        RealUnivariateRep(U("T^2-2"), U("T^2-2"), (U("T"),), ThomEncoding.parse("(+,+)"))


def test_chamber_filter_examples():
    # q = 3T^2 - 8T + 5 has roots 1 and 5/3; coords (T, (4 - T)/2) give (1,3/2)? use the solver's shape
    q = U("3*T^2-8*T+5")
    kept = chamber_filter(q, U("1"), [U("T"), U("(4-T)/2")])
    assert len(kept) == 1
    r = RealUnivariateRep(q, U("1"), (U("T"), U("(4-T)/2")), kept[0])
    assert r.rational_value() == [Fraction(1), Fraction(3, 2)]
    assert chamber_filter(U("T^2+1"), U("1"), [U("T"), U("T")]) == []
    assert len(chamber_filter(U("T^3-T"), U("1"), [U("T")])) == 3


@settings(max_examples=60, deadline=None)
@given(unipolys(10))
def test_encoding_count_matches_tarski(q):
    assert len(thom_encodings(q)) == tarski_query(q, U("1")) == count_real_roots(q)


@settings(max_examples=60, deadline=None)
@given(rooted_unipolys(), st.lists(st.builds(Fraction, st.integers(-40, 40), st.integers(1, 4)), min_size=1, max_size=6))
def test_ordering_matches_bisection(case, cs):
    q, roots = case
    encs = thom_encodings(q)
    assert len(encs) == len(roots)
    for c in cs:
        p = UniPoly((-c, 1))
        for enc, root in zip(encs, roots):
            want = (root > c) - (root < c)
            assert sign_at(q, enc, p) == want


@settings(max_examples=60, deadline=None)
@given(unipolys(6), unipolys(4), unipolys(4))
def test_sign_multiplicative(q, p1, p2):
    for enc in thom_encodings(q):
        assert sign_at(q, enc, p1 * p2) == sign_at(q, enc, p1) * sign_at(q, enc, p2)


@settings(max_examples=40, deadline=None)
@given(rooted_unipolys(), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_rur_sign_matches_rational_evaluation(case, cs):
    q, roots = case
    coords = (UniPoly((cs[0], 1)), UniPoly((1, cs[1])))
    f = MultiPoly.parse("X1^2 - 3*X2 + X1*X2 - 1", 2)
    for enc, root in zip(thom_encodings(q), roots):
        r = RealUnivariateRep(q, UniPoly((1,)), coords, enc)
        v = f(coords[0](root), coords[1](root))
        assert rur_eval_sign(r, f) == (v > 0) - (v < 0)


def test_isolation_and_refinement():
    q = U("T^3-2")
    (iv,) = isolate_roots(q)
    lo, hi = refine_interval(q, iv, Fraction(1, 10**6))
    assert hi - lo <= Fraction(1, 10**6) and lo ** 3 <= 2 <= hi ** 3


def test_signs_at_roots():
    q = U("(T-1)*(T-2)*(T-3)")
    signs = signs_at_roots(q, U("T-2"))
    assert sorted(signs.values()) == [-1, 0, 1]
