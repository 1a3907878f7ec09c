import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbivertex.series import (Series, SeriesError, Var, VarRegistry, WindowError, bar,
                               geom_expand, invert, macmahon, substitute, vertex_registry)

REG = vertex_registry(2)


def poly(d, qmax=6):
    return Series(REG, d, qmax)


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=6
).map(lambda d: Series(REG, d, 6))


def test_registry():
    reg = VarRegistry((Var("q", 2), Var("x"), Var("v", 1, "v")))
    assert reg.qdeg(reg.exps({"q": 1, "x": 3, "v": 5})) == 5
    assert reg.vdeg(reg.exps({"v": 2})) == 2
    with pytest.raises(ValueError):
        VarRegistry((Var("a"), Var("a")))
    with pytest.raises(ValueError):
        Var("a", 0)


def test_macmahon_coefficients():
    reg = vertex_registry(1)
    M = macmahon(reg, None, (1,), 1, 8)
    assert [M.terms.get((k,), 0) for k in range(9)] == [1, 1, 3, 6, 13, 24, 48, 86, 160]
    Mm = macmahon(reg, None, (1,), -1, 4)
    assert [Mm.terms.get((k,), 0) for k in range(5)] == [1, -1, 3, -6, 13]


def test_geom_expand_and_invert():
    x = geom_expand(REG, (1, 0), -2, 1, 5)
    assert [x.terms.get((k, 0), 0) for k in range(6)] == [1, 2, 3, 4, 5, 6]
    one = (x * geom_expand(REG, (1, 0), 2, 1, 5)).truncate(5)
    assert one.agrees(Series.one(REG, 5))
    with pytest.raises(SeriesError):
        geom_expand(REG, (0, 0), -1)
    with pytest.raises(WindowError):
        geom_expand(REG, (1, 0), -1)


@given(small_polys, small_polys)
def test_ring_axioms(a, b):
    assert (a * b).agrees(b * a)
    assert (a + b - b).agrees(a)


@settings(max_examples=50)
@given(small_polys)
def test_invert_round_trip(a):
    s = Series.one(REG, 6) + a.shift((1, 0))
    inv = invert(s, 6)
    assert (s * inv).truncate(6).agrees(Series.one(REG, 6))


def test_windows_track_products():
    a = poly({(0, 0): 1, (1, 0): 1}, 3)
    b = poly({(0, 0): 1}, 5)
    assert (a * b).qmax == 3


def test_bar_and_json_round_trip():
    s = poly({(1, 2): 3, (0, 1): -1})
    assert bar(s, ("q0", "q1")).terms == s.terms  # n = 2: q1 <-> q_{-1} = q1
    reg3 = vertex_registry(3)
    t = Series(reg3, {(0, 1, 2): 1}, 5)
    assert bar(t, reg3.names).terms == {(0, 2, 1): 1}
    doc = json.loads(s.dumps())
    back = Series.from_json(doc, REG)
    assert back.agrees(s) and back.terms == s.terms


def test_substitute_weighted():
    reg = VarRegistry((Var("q", 2), Var("a"), Var("b")))
    s = Series(reg, {(1, 0, 0): 1, (0, 1, 1): 2}, 4)
    out = substitute(s, {"q": {"a": 1, "b": 1}}, reg)
    assert out.terms == {(0, 1, 1): 3}


def test_to_text():
    reg = vertex_registry(1)
    assert Series(reg, {(0,): 1, (2,): -3}).to_text() == "1 - 3*q0^2"
