import random

from hypothesis import given, settings
from hypothesis import strategies as st

from orbivertex.partitions import Partition, a_factor
from orbivertex.series import Series, vertex_registry
from orbivertex.vertexops import (StateVector, check_retrograde, commutation_scalar,
                                  framing_lattice, gamma_apply, operator_vertex,
                                  operator_vertex_at, start_N)
from orbivertex.znvertex import vertex
from strategies import partitions

E = Partition()


def test_gamma_minus_on_vacuum():
    v = gamma_apply(-1, (1,), StateVector.basis(E, 1, D=3))
    # Gamma_-(x)|0> = sum over one-row partitions x^k |k>
    assert set(v.coeffs) == {E, Partition([1]), Partition([2]), Partition([3])}
    assert v.matrix_element(Partition([2])).terms == {(2,): 1}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.sampled_from([1, -1]), st.sampled_from([1, -1]),
       st.integers(0, 10 ** 6))
def test_gamma_commutation(n, sigma, tau, seed):
    rng = random.Random(seed)
    a = tuple(rng.randint(0, 1) for _ in range(n - 1)) + (1,)
    b = tuple(rng.randint(0, 1) for _ in range(n - 1)) + (1,)
    v = StateVector.basis(rng.choice([E, Partition([1]), Partition([2, 1])]), n, D=5)
    lhs = gamma_apply(sigma, a, gamma_apply(tau, b, v))
    rhs = gamma_apply(tau, b, gamma_apply(sigma, a, v)).scale(
        commutation_scalar(sigma, a, tau, b, n, 5))
    assert lhs.agrees(rhs)


@given(partitions(max_size=6), st.integers(1, 4), st.integers(1, 3))
def test_framing_lattice(lam, n, N):
    assert list(framing_lattice(lam, n, N)) == a_factor(lam, n)


def test_operator_product_matches_formula():
    for legs in [(E, E, E), (Partition([1]), E, Partition([2])), (Partition([1]),) * 3]:
        for n in (1, 2):
            assert operator_vertex(*legs, n, 5).agrees(vertex(legs, n, 5), 5)


def test_operator_product_stable_in_N():
    legs = (Partition([1]), E, Partition([1]))
    N = start_N(*legs, 1, 4)
    a = operator_vertex_at(*legs, 1, N, 4)
    b = operator_vertex_at(*legs, 1, N + 1, 4)
    assert a.agrees(b, 4)


def test_retrograde():
    for nu in ([], [1], [2], [1, 1], [2, 1]):
        for n in (1, 2, 3):
            assert check_retrograde(Partition(nu), n, 4).ok


def test_state_vector_add():
    reg = vertex_registry(1)
    v = StateVector(1, {E: Series.one(reg, 3)}, 3)
    w = v + v
    assert w.matrix_element(E).terms == {(0,): 2}
