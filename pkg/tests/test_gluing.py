import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbivertex.gluing import (DTOptions, GluingError, crepant_check, dt_multiregular,
                               dt_partition_function, dt_reduced, dt_zero, edge_sign,
                               expand_rational, football_closed_form,
                               multiregular_rational_terms, sign_crosscheck,
                               to_football_variables, variable_model)
from orbivertex.partitions import Partition, is_multiregular
from orbivertex.series import invert, macmahon, substitute
from orbivertex.webdiagram import (EdgeGeometry, derive_edge_geometry, load_example, orient,
                                   relabel, reverse_edge)
from strategies import partitions


def test_c3_is_macmahon():
    od = orient(load_example("c3"))
    s = dt_partition_function(od, DTOptions(D=6, Dv=0))
    assert [s.terms.get((k,), 0) for k in range(7)] == [1, -1, 3, -6, 13, -24, 48]


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_football_closed_form(a, b):
    name = "conifold" if (a, b) == (1, 1) else f"football_{a}_{b}"
    glued = dt_partition_function(orient(load_example(name)), DTOptions(D=8, Dv=2))
    assert to_football_variables(glued, a, b).agrees(football_closed_form(a, b, 8, 2))


def test_conifold_reduced():
    od = orient(load_example("conifold"))
    red = dt_reduced(od, DTOptions(D=8, Dv=3))
    M = macmahon(variable_model(od).reg, {"v_e": 1}, {"q": 1}, -1, 8, 3)
    assert red.agrees(invert(M, 8, 3))


def test_degree_zero_is_product_of_vacua():
    od = orient(load_example("local_p1xp1"))
    z = dt_zero(od, DTOptions(D=5, Dv=2))
    M = macmahon(variable_model(od).reg, None, {"q": 1}, -1, 5)
    assert z.agrees((M ** 4).truncate(5))


@pytest.mark.parametrize("name", ["football_2_2", "football_3_2", "bz2_gerbe", "local_p1xp1"])
def test_orientation_independence(name):
    d = load_example(name)
    base = dt_partition_function(orient(d), DTOptions(D=6, Dv=2))
    geo = derive_edge_geometry(d)
    for e in d.edges:
        s = dt_partition_function(orient(reverse_edge(d, e.id)), DTOptions(D=6, Dv=2))
        n = geo[e.id].n
        if n > 1:
            s = substitute(s, {f"q_{e.id}{k}": {f"q_{e.id}{(-k) % n}": 1} for k in range(n)})
        assert base.agrees(s), e.id


def test_relabel_invariance():
    d = load_example("local_p1xp1")
    r = relabel(d, {"A": "Z", "B": "A"}, {"rA": "ray1"})
    r = relabel(r, {"Z": "B"}, {})
    a = dt_partition_function(orient(d), DTOptions(D=6, Dv=2))
    b = dt_partition_function(orient(r), DTOptions(D=6, Dv=2))
    assert a.reg == b.reg and a.terms == b.terms


def test_multiregular_rational_form():
    od = orient(load_example("bz2_gerbe"))
    r = dt_multiregular(od, DTOptions(D=8, Dv=2, signed=False))
    e = expand_rational(multiregular_rational_terms(od, 2), r.reg, 8, 2)
    assert r.agrees(e)


def test_crepant_small_window():
    rep = crepant_check(6, 3, 2)
    assert rep.ok and rep.compared > 0


@settings(max_examples=60)
@given(partitions(max_size=6), st.integers(-3, 1), st.tuples(*[st.integers(0, 1)] * 4))
def test_sign_crosscheck_n1(lam, mt, deltas):
    g = EdgeGeometry("e", 1, True, m=mt, mp=-2 - mt, mt=mt, mtp=-2 - mt, deltas=deltas)
    assert sign_crosscheck(g, lam).agree


@given(partitions(max_size=6))
def test_multiregular_sign_n2(lam):
    g = EdgeGeometry("e", 2, True, m=-1, mp=-1, mt=-1, mtp=-1)
    assert sign_crosscheck(g, lam).agree
    if is_multiregular(lam, 2):
        assert edge_sign(g, lam) in (0, 1)


def test_crosscheck_rejects_neighbours_on_orbifold_edge():
    g = EdgeGeometry("e", 2, True, m=-1, mp=-1, mt=-1, mtp=-1, deltas=(1, 0, 0, 0))
    with pytest.raises(GluingError):
        sign_crosscheck(g, Partition([1]))
