import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbivertex.webdiagram import (DiagramError, NotTransverse, derive_edge_geometry,
                                   example_names, football_chi, load_example, local_group_order,
                                   orient, parse_and_validate, relabel, reverse_edge,
                                   root_of_unity_closed, root_of_unity_sum, toen_chi, transform,
                                   transverse_a_check)

NOT_TRANSVERSE = {
    "vertices": [{"id": "v", "edges": ["a", "b", "c"]}],
    "edges": [
        {"id": "a", "from": "v", "to": None, "marking_from": [-1, -1]},
        {"id": "b", "from": "v", "to": None, "marking_from": [2, -1]},
        {"id": "c", "from": "v", "to": None, "marking_from": [-1, 2]},
    ],
}


def test_examples_load():
    names = example_names()
    for want in ("c3", "conifold", "bz2_gerbe", "local_p1xp1", "football_2_3"):
        assert want in names
    for name in names:
        d = load_example(name)
        assert orient(d).diagram is d
        assert parse_and_validate(json.dumps(d.to_json())).digest() == d.digest()


def test_geometry_of_examples():
    g = derive_edge_geometry(load_example("conifold"))["e"]
    assert (g.n, g.m, g.mp) == (1, -1, -1)
    g = derive_edge_geometry(load_example("bz2_gerbe"))["e"]
    assert (g.n, g.m, g.mp, g.mt) == (2, -1, -1, -1)
    g = derive_edge_geometry(load_example("football_2_3"))["e"]
    assert (g.m, g.mp) == (Fraction(-1, 2), Fraction(-1, 3))
    assert g.orders == (2, 1, 1, 3)
    g = derive_edge_geometry(load_example("local_p1xp1"))["AB"]
    assert (g.m, g.mp) == (0, -2)


def test_validation_errors():
    bad = json.loads(json.dumps(NOT_TRANSVERSE))
    bad["edges"][0]["marking_from"] = [0, 0]
    with pytest.raises(DiagramError):
        parse_and_validate(bad)
    bad = json.loads(json.dumps(NOT_TRANSVERSE))
    bad["vertices"][0]["edges"] = ["a", "b", "x"]
    with pytest.raises(DiagramError):
        parse_and_validate(bad)


def test_transverse_check_names_vertex():
    d = parse_and_validate(NOT_TRANSVERSE)
    assert local_group_order(d, "v") == 3
    rep = transverse_a_check(d)
    assert not rep.ok and "vertex v" in rep.problems[0]
    with pytest.raises(NotTransverse):
        orient(d)


def test_reverse_and_relabel_keep_geometry():
    d = load_example("football_2_2")
    r = reverse_edge(d, "e")
    g1, g2 = derive_edge_geometry(d)["e"], derive_edge_geometry(r)["e"]
    assert (g1.m, g1.mp) == (g2.mp, g2.m)
    d2 = relabel(d, {"p0": "A"}, {"e": "E"})
    assert derive_edge_geometry(d2)["E"].m == g1.m


def test_sl2_invariance():
    d = load_example("local_p1xp1")
    t = transform(d, ((1, 1), (0, 1)))
    a, b = derive_edge_geometry(d), derive_edge_geometry(t)
    for eid in a:
        assert (a[eid].n, a[eid].m, a[eid].mp) == (b[eid].n, b[eid].m, b[eid].mp)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(-3, 3), st.integers(-12, 12),
       st.integers(-12, 12))
def test_football_chi(a, b, d, s, t):
    assert football_chi(a, b, d, s, t) == toen_chi(a, b, d, s, t)


@given(st.integers(1, 12), st.integers(-36, 36))
def test_root_of_unity_sum(a, s):
    assert root_of_unity_sum(a, s) == root_of_unity_closed(a, s)
