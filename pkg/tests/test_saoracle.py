import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symconn.polycore import InputError, MultiPoly, UniPoly
from symconn.realroots import RealUnivariateRep, ThomEncoding
from symconn.saoracle import (
    Atom, SemiAlgDescription, SubdivisionOracle, connect, difference, eval_membership,
    intersection, polyline_in_set, sample_components, segment_in_set, snap_point,
)

F = Fraction
D = SemiAlgDescription


def basic(*atoms, nvars=2, box=None):
    return D.basic([(MultiPoly.parse(t, nvars), r) for t, r in atoms], box=box)


def union(*sets):
    return D.union(list(sets))


def disk(cx, cy, r2, rel="ge", box=None):
    return basic((f"{r2}-(X1-({cx}))^2-(X2-({cy}))^2", rel), box=box)


BOX2 = [(-3, 3), (-3, 3)]

GALLERY = [
    ("two rays", basic(("X1^2-1", "ge"), nvars=1, box=[(-3, 3)]), 2),
    ("unit disk", disk(0, 0, 1), 1),
    ("two small disks", union(disk(2, 0, "1/4", box=BOX2), disk(-2, 0, "1/4", box=BOX2)), 2),
    ("annulus", basic(("X1^2+X2^2-1", "ge"), ("4-X1^2-X2^2", "ge")), 1),
    ("hyperbola sides", basic(("X1*X2-1", "ge"), box=BOX2), 2),
    ("open rays", basic(("X1^2-1", "gt"), nvars=1, box=[(-3, 3)]), 2),
    ("open disk", disk(0, 0, 1, "gt"), 1),
    ("quartic sign pattern", basic(("(X1-1)*(X1-2)*(X1-3)*(X1-4)", "ge"), nvars=1, box=[(0, 5)]), 3),
    ("parabola cap", basic(("X2-X1^2", "ge"), ("2-X2", "ge"), box=BOX2), 1),
    ("overlapping disks", union(disk("1/2", 0, 1, box=BOX2), disk("-1/2", 0, 1, box=BOX2)), 1),
    ("empty", basic(("X1^2+X2^2+1", "le"), box=BOX2), 0),
    ("three intervals", union(*[basic((f"X1-{a}", "ge"), (f"{a + 1}-X1", "ge"), nvars=1, box=[(-1, 6)]) for a in (0, 2, 4)]), 3),
]


@pytest.mark.parametrize("name,s,count", GALLERY, ids=[g[0] for g in GALLERY])
def test_gallery_component_counts(name, s, count):
    res = sample_components(s, 8)
    assert len(res) == count
    assert not res.unknown and not res.ambiguous
    for p, _ in res:
        assert eval_membership(s, p)


def test_sample_examples_points():
    res = sample_components(GALLERY[0][1], 12)
    xs = sorted(p[0] for p, _ in res)
    assert xs[0] < -1 and xs[1] > 1


def test_difference_examples():
    a = basic(("X1", "ge"), nvars=1, box=[(-2, 2)])
    b = basic(("X1-1", "ge"), nvars=1, box=[(-2, 2)])
    d = difference(a, b)
    assert d.dnf == ((Atom(MultiPoly.parse("X1", 1), "ge"), Atom(MultiPoly.parse("X1-1", 1), "lt")),)
    assert eval_membership(d, [0]) and not eval_membership(d, [1]) and eval_membership(d, [F(99, 100)])
    empty = difference(a, a)
    assert len(sample_components(empty, 8)) == 0
    half = difference(disk(0, 0, 1), basic(("X1", "ge")))
    assert half.dnf == ((Atom(MultiPoly.parse("1-X1^2-X2^2", 2), "ge"), Atom(MultiPoly.parse("X1", 2), "lt")),)


def test_contradictory_conjuncts_dropped():
    a = basic(("X1", "ge"), ("1-X1", "ge"), nvars=1, box=[(-2, 2)])
    assert difference(a, a).dnf == ()
    upper = basic(("X2", "ge"))
    assert intersection(upper, basic(("-2*X2", "gt"))).dnf == ()
    # x >= 0 and -x >= 0 leave the line x = 0
    line = intersection(upper, basic(("-X2", "ge")))
    assert line.dnf == ((Atom(MultiPoly.parse("X2", 2), "eq"),),)
    assert intersection(upper, basic(("X2", "gt"))).dnf == ((Atom(MultiPoly.parse("X2", 2), "gt"),),)


def test_intersection_examples():
    a = basic(("X1", "ge"), nvars=1, box=[(-2, 2)])
    b = basic(("1-X1", "ge"), nvars=1, box=[(-2, 2)])
    s = intersection(a, b)
    assert eval_membership(s, [0]) and eval_membership(s, [1]) and not eval_membership(s, [2])
    full = D.full_space(1, box=[(-2, 2)])
    assert intersection(a, full).dnf == a.dnf
    far = intersection(basic(("X1", "ge"), ("1-X1", "ge"), nvars=1), basic(("X1-2", "ge"), ("3-X1", "ge"), nvars=1))
    assert len(sample_components(far, 8)) == 0


def test_dimension_mismatch():
    with pytest.raises(InputError):
        difference(basic(("X1", "ge"), nvars=1), disk(0, 0, 1))
    with pytest.raises(InputError):
        intersection(basic(("X1", "ge"), nvars=1), disk(0, 0, 1))


def test_membership_examples():
    d = disk(0, 0, 1)
    assert eval_membership(d, [0, 0])
    assert not eval_membership(d, [2, 0])
    q = UniPoly.parse("T^2-2")
    r = RealUnivariateRep(q, UniPoly.const(1), (UniPoly.parse("T"),), ThomEncoding.parse("(+,+)"))
    assert eval_membership(basic(("X1^2-2", "eq"), nvars=1), r)


def test_connect_examples():
    rays = GALLERY[0][1]
    assert connect(rays, [1], [3]).value == "connected"
    assert connect(rays, [-2], [2]).value == "disconnected"
    ring = GALLERY[3][1]
    ans = connect(ring, [F(3, 2), 0], [F(-3, 2), 0])
    assert ans.value == "connected"
    assert polyline_in_set(ring, ans.witness)
    # the straight segment crosses the hole
    assert not segment_in_set(ring, [F(3, 2), 0], [F(-3, 2), 0])


def test_connect_rejects_non_members():
    with pytest.raises(InputError, match="point w"):
        connect(GALLERY[0][1], [2], [0])


def test_certificate_json():
    ans = connect(GALLERY[3][1], [F(3, 2), 0], [F(-3, 2), 0], depth=8)
    doc = json.loads(ans.dumps())
    assert doc["answer"] == "connected" and doc["depth"] == 8
    assert isinstance(doc["witness"], list) and isinstance(doc["warnings"], list)


def test_box_enlarged_for_outside_points():
    s = basic(("X1", "ge"), nvars=1, box=[(-1, 1)])
    ans = connect(s, [0], [5], depth=6)
    assert ans.value == "connected"


def test_snap_rational_and_irrational():
    q = UniPoly.parse("T^2-2")
    r = RealUnivariateRep(q, UniPoly.const(1), (UniPoly.parse("T"), UniPoly.parse("T")), ThomEncoding.parse("(+,+)"))
    s = disk(0, 0, 9)
    pt, warns = snap_point(s, r)
    assert pt is not None and pt[0] == pt[1] and not warns
    assert abs(pt[0] - F(1414, 1000)) < F(1, 100)


set_algebra_pool = [
    disk(0, 0, 1), disk(1, 0, 1), basic(("X1", "ge")), basic(("X1*X2", "gt")),
    basic(("X1^2-X2", "eq")), union(disk(0, 0, 1), basic(("X2-1", "ge"))),
]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(set_algebra_pool), st.sampled_from(set_algebra_pool),
       st.lists(st.builds(F, st.integers(-12, 12), st.integers(1, 4)), min_size=2, max_size=2))
def test_set_algebra_membership(a, b, x):
    ma, mb = eval_membership(a, x), eval_membership(b, x)
    assert eval_membership(difference(a, b), x) == (ma and not mb)
    assert eval_membership(intersection(a, b), x) == (ma and mb)


_oracle = SubdivisionOracle(8)
_witness_sets = [GALLERY[3][1], GALLERY[4][1], GALLERY[8][1], GALLERY[9][1]]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(range(len(_witness_sets))),
       st.lists(st.builds(F, st.integers(-24, 24), st.integers(8, 8)), min_size=4, max_size=4))
def test_connected_answers_carry_valid_witnesses(k, coords):
    s = _witness_sets[k]
    u, w = coords[:2], coords[2:]
    if not (eval_membership(s, u) and eval_membership(s, w)):
        return
    ans = _oracle.connect(s, u, w)
    if ans.value == "connected":
        assert ans.witness[0] == u and ans.witness[-1] == w
        assert all(eval_membership(s, p) for p in ans.witness)
        assert polyline_in_set(s, ans.witness)


def test_depth_monotonicity():
    s = basic(("X1^2+X2^2-1", "ge"), ("X1^2+X2^2-36/25", "le"))
    u, w = [F(11, 10), 0], [F(-11, 10), 0]
    seen = [connect(s, u, w, depth).value for depth in range(3, 11)]
    resolved = [v for v in seen if v != "unknown"]
    assert len(set(resolved)) <= 1
    assert seen[-1] == "connected"
