import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symconn.compositions import FamilyPattern
from symconn.polycore import InputError, MultiPoly, power_sum
from symconn.pipeline import Problem, Verdict, connectivity_symmetric, validate
from symconn.saoracle import SubdivisionOracle

F = Fraction


def p1_squared_minus_one(n):
    p1 = power_sum(1, n)
    return p1 * p1 - MultiPoly.const(1, n)


def problem(n, x, y, polys=None, **kw):
    polys = polys if polys is not None else [(p1_squared_minus_one(n), "ge")]
    return Problem(n, polys, [F(v) for v in x], [F(v) for v in y], **kw)


def test_opposite_sides_disconnected():
    v = connectivity_symmetric(problem(3, [-1, -1, -1], [1, 1, 1]))
    assert v.answer == "disconnected" and v.exit_code == 1


def test_same_side_connected():
    v = connectivity_symmetric(problem(3, [-2, -1, 0], [-1, -1, -1]))
    assert v.answer == "connected" and v.exit_code == 0


def test_identical_points():
    v = connectivity_symmetric(problem(4, [0, 0, 1, 2], [0, 0, 1, 2]))
    assert v.answer == "connected"


def test_constant_polynomials():
    P = problem(3, [0, 1, 2], [-5, 0, 0], polys=[(MultiPoly.const(1, 3), "ge")])
    assert connectivity_symmetric(P).answer == "connected"


def test_certificate_contents():
    v = connectivity_symmetric(problem(4, [0, 0, 0, 1], [0, 1, 1, 2]))
    assert v.answer == "connected"
    doc = json.loads(v.dumps())
    cert = doc["certificate"]
    for key in ("a", "b", "lambda_x", "lambda_y", "gamma", "eta", "vertices", "components", "family", "graph"):
        assert key in cert
    assert cert["a"] == ["1", "1"] and cert["b"] == ["4", "6"]


def test_validate_violations():
    x1 = MultiPoly.var(0, 3)
    x2 = MultiPoly.var(1, 3)
    msgs = validate(problem(3, [0, 0, 0], [0, 0, 0], polys=[(x1 - x2, "ge")]))
    assert any("not symmetric" in m for m in msgs)
    msgs = validate(problem(3, [2, 1, 0], [1, 1, 1]))
    assert any("x is not sorted" in m for m in msgs)
    msgs = validate(problem(3, [0, 0, 0], [1, 1, 1]))
    assert len(msgs) == 1 and "x is not in S" in msgs[0] and ">= 0" in msgs[0]
    msgs = validate(problem(2, [-1, 0], [1, 1], polys=[(power_sum(2, 2), "ge")]))
    assert any("not below n" in m for m in msgs)
    assert validate(problem(3, [-1, -1, -1], [1, 1, 1])) == []


def test_invalid_problem_raises():
    with pytest.raises(InputError, match="not in S"):
        connectivity_symmetric(problem(3, [0, 0, 0], [1, 1, 1]))


def test_problem_json_round_trip():
    P = problem(3, [-1, -1, -1], [1, 1, 1], pattern=FamilyPattern.FRONT, depth=9)
    Q = Problem.from_json(json.dumps(P.to_json()))
    assert Q.to_json() == P.to_json()
    assert Q.pattern is FamilyPattern.FRONT and Q.depth == 9


@pytest.mark.parametrize("text,needle", [
    ('{"n": 3, "polys": [', "line 1 column"),
    ('[1, 2]', "JSON object"),
    ('{"n": 3, "polys": [], "x": [0,0,0]}', "'y'"),
    ('{"n": 3, "polys": [{"terms": [[[1,0,0], "1"]], "rel": "gt"}], "x": [0,0,0], "y": [0,0,0]}', "polys[0]"),
    ('{"n": 3, "polys": [], "x": ["a",0,0], "y": [0,0,0]}', "x:"),
    ('{"n": 3, "polys": [], "x": [0,0,0], "y": [0,0,0], "config": {"pattern": "side"}}', "config.pattern"),
])
def test_problem_json_errors(text, needle):
    with pytest.raises(InputError) as exc:
        Problem.from_json(text)
    assert needle in str(exc.value)


@pytest.mark.parametrize("n,d", [(3, 2), (5, 2), (6, 2)])
def test_family_size_in_certificate(n, d):
    # with d = 2 every fiber minimizer lies on the single family face
    f = power_sum(2, n) - MultiPoly.const(1, n)
    P = problem(n, range(n), range(1, n + 1), polys=[(f, "ge")], pattern=FamilyPattern.FRONT)
    v = connectivity_symmetric(P)
    assert len(v.certificate["family"]) == comb(n - (d + 1) // 2 - 1, d // 2 - 1)


SHARED = SubdivisionOracle(10)
SIDES = [[-2, -1, 0], [-1, -1, -1], [-3, 0, 1], [1, 1, 1], [0, 1, 2], [0, 0, 3]]


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(SIDES), st.sampled_from(SIDES), st.permutations([0, 1, 2]), st.integers(0, 2))
def test_verdict_stable_under_reordering_and_duplication(x, y, perm, dup):
    f = p1_squared_minus_one(3)
    g = MultiPoly.const(100, 3) - power_sum(2, 3)
    h = MultiPoly.const(1, 3)
    base = [(f, "ge"), (g, "ge"), (h, "ge")]
    shuffled = [base[i] for i in perm] + [base[dup]]
    v1 = connectivity_symmetric(problem(3, x, y, polys=base, depth=10), SHARED)
    v2 = connectivity_symmetric(problem(3, x, y, polys=shuffled, depth=10), SHARED)
    assert v1.answer == v2.answer
    truth = "connected" if (sum(x) < 0) == (sum(y) < 0) else "disconnected"
    assert v1.answer in (truth, "unknown")


def test_verdict_json_shape():
    v = Verdict("unknown", {"unresolved": ["x"]})
    assert v.exit_code == 2 and json.loads(v.dumps())["answer"] == "unknown"
