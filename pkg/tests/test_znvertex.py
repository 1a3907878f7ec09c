import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from orbivertex.boxcount import enumerate_vertex
from orbivertex.partitions import Partition, conjugate, partitions_up_to
from orbivertex.series import bar, vertex_registry
from orbivertex.znvertex import FormulaConvention, vacuum, vertex
from strategies import partitions

E = Partition()


def test_vacuum_z2():
    v = vacuum(2, 3)
    box = enumerate_vertex((E, E, E), 2, 3)
    assert v.agrees(box)


def test_one_leg_n1():
    s = vertex((Partition([1]), E, E), 1, 4)
    assert [s.terms.get((k,), 0) for k in range(5)] == [1, 2, 5, 11, 24]


@settings(max_examples=25, deadline=None)
@given(partitions(max_size=2, max_parts=2), partitions(max_size=2, max_parts=2),
       partitions(max_size=2, max_parts=2), st.integers(1, 3))
def test_formula_matches_boxes(lam, mu, nu, n):
    legs = (lam, mu, nu)
    assert vertex(legs, n, 5).agrees(enumerate_vertex(legs, n, 5), 5)


@settings(max_examples=25, deadline=None)
@given(partitions(max_size=3), partitions(max_size=3), partitions(max_size=3), st.integers(1, 3))
def test_reflection_symmetry(lam, mu, nu, n):
    v = vertex((lam, mu, nu), n, 4)
    w = vertex((conjugate(mu), conjugate(lam), conjugate(nu)), n, 4)
    assert v.agrees(bar(w, vertex_registry(n).names), 4)


def test_alternative_conventions_disagree_with_boxes():
    # only the default reading reproduces the oracle; n = 2 cannot tell them apart
    legs_list = list(itertools.product(partitions_up_to(2), repeat=3))
    for conv in (FormulaConvention(True, False), FormulaConvention(False, True)):
        assert any(not vertex(l, 3, 4, conv).agrees(enumerate_vertex(l, 3, 4), 4) for l in legs_list)
