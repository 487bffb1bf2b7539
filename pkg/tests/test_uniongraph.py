import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symconn.polycore import InputError, MultiPoly
from symconn.saoracle import SemiAlgDescription, SubdivisionOracle
from symconn.uniongraph import build_graph, graph_components, locate_vertex

F = Fraction


def interval(a, b, box=(-2, 6)):
    return SemiAlgDescription.basic(
        [(MultiPoly.parse(f"X1-({a})", 1), "ge"), (MultiPoly.parse(f"({b})-X1", 1), "ge")], box=[box])


def rays():
    return SemiAlgDescription.basic([(MultiPoly.parse("X1^2-1", 1), "ge")], box=[(-3, 3)])


ORACLE = SubdivisionOracle(10)


def n_components(g):
    return len(set(g.component_of.values()))


def test_overlapping_intervals():
    sets = [interval(0, 2), interval(1, 3)]
    g = build_graph(sets, ORACLE, 10)
    assert len(g.A) == 2 and len(g.B) == 1
    assert [v.tag for v in g.A] == [(0, 1), (1, 0)]
    assert g.B[0].tag == (0, 1)
    assert sorted(g.E) == [(0, 0, 0), (1, 0, 1)]
    assert n_components(g) == 1 and not g.incomplete


def test_disjoint_intervals():
    g = build_graph([interval(0, 1), interval(2, 3)], ORACLE, 10)
    assert len(g.A) == 2 and not g.B and not g.E
    assert n_components(g) == 2


def test_single_set():
    g = build_graph([rays()], ORACLE, 10)
    assert len(g.A) == 2 and all(v.tag == (0, 0) for v in g.A)
    assert n_components(g) == 2


def test_chain_of_three():
    g = build_graph([interval(0, 2), interval(1, 3), interval("5/2", 5)], ORACLE, 10)
    assert n_components(g) == 1
    g2 = build_graph([interval(0, 1), interval("1/2", "3/2"), interval(4, 5)], ORACLE, 10)
    assert n_components(g2) == 2


def test_locate_vertex():
    sets = [interval(0, 2), interval(1, 3)]
    g = build_graph(sets, ORACLE, 10)
    res = locate_vertex(g, sets, [F(3, 2)], 0, ORACLE)
    assert res.status == "found"
    # the located vertex is in the same graph component as the overlap vertex
    assert g.component_of[res.vertex] == g.component_of[("B", 0)]
    res2 = locate_vertex(g, sets, [F(5, 2)], 1, ORACLE)
    assert res2.vertex == ("A", 1)
    with pytest.raises(InputError):
        locate_vertex(g, sets, [F(5, 2)], 0, ORACLE)


def test_locate_in_disconnected_set():
    g = build_graph([rays()], ORACLE, 10)
    left = locate_vertex(g, [rays()], [-2], 0, ORACLE)
    right = locate_vertex(g, [rays()], [2], 0, ORACLE)
    assert g.component_of[left.vertex] != g.component_of[right.vertex]


def test_graph_components_direct():
    g = build_graph([interval(0, 1), interval(2, 3)], ORACLE, 10)
    comps = graph_components(g)
    assert sorted(len(c) for c in comps) == [1, 1]


def test_json_dump():
    g = build_graph([interval(0, 2), interval(1, 3)], ORACLE, 10)
    doc = json.loads(g.dumps())
    assert set(doc) == {"A", "B", "E", "components", "incomplete", "depth"}
    assert doc["E"] == [list(e) for e in g.E]


endpoints = st.builds(F, st.integers(0, 16), st.just(4))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(endpoints, endpoints), min_size=1, max_size=3))
def test_interval_unions_match_sweep(pairs):
    ivs = [(min(a, b), max(a, b) + F(1, 4)) for a, b in pairs]
    g = build_graph([interval(a, b) for a, b in ivs], ORACLE, 10)
    # edges only join A to B through a shared set index
    for ai, bi, i in g.E:
        assert g.A[ai].tag[0] == i and i in g.B[bi].tag
    merged = []
    for a, b in sorted(ivs):
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    if g.incomplete:
        # e.g. intervals touching at a point: the overlap is below resolution
        assert n_components(g) >= len(merged)
    else:
        assert n_components(g) == len(merged)


def test_repair_bridges_split_vertices():
    same = [interval(0, 1)] * 3
    g = build_graph(same, ORACLE, 10)
    assert n_components(g) == 1
    for ai, bi, i in g.E:
        assert i in g.A[ai].tag and i in g.B[bi].tag
    lonely = build_graph([interval(0, 1), interval(2, 3), interval(4, 5)], ORACLE, 10)
    assert n_components(lonely) == 3


def test_deterministic():
    sets = [interval(0, 2), interval(1, 3), interval("5/2", 5)]
    a = build_graph(sets, SubdivisionOracle(10), 10).dumps()
    b = build_graph(sets, SubdivisionOracle(10), 10).dumps()
    assert a == b
