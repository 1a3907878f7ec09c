from hypothesis import given, settings
from hypothesis import strategies as st

from orbivertex.partitions import Partition, partitions_of
from orbivertex.schur import (Specialization, complete_homogeneous, qfrak, schur_tableaux,
                              skew_min_degree, skew_schur)
from strategies import partitions


def test_qfrak():
    assert qfrak(0, 3) == (0, 0, 0)
    assert qfrak(3, 2) == (1, 2)
    assert qfrak(-1, 2) == (-1, 0)


def test_h_at_principal_specialization():
    # h_2(1, q, q^2, ...) = 1 / ((1 - q)(1 - q^2))
    h = complete_homogeneous(2, Specialization(1), 6)
    assert [h.terms.get((k,), 0) for k in range(7)] == [1, 1, 2, 2, 3, 3, 4]


@settings(max_examples=40, deadline=None)
@given(partitions(max_size=4), st.integers(1, 3), st.sampled_from([(), (1,), (2,), (1, 1), (2, 1)]))
def test_jacobi_trudi_vs_tableaux(lam, n, nu):
    spec = Specialization(n, Partition(nu))
    D = 5
    for k in range(lam.size + 1):
        for eta in partitions_of(k):
            if not lam.contains(eta):
                continue
            N = lam.size - k
            dmin = min(spec.min_degree, 0)
            xs = spec.variables_up_to(D - max(N - 1, 0) * dmin)
            a = skew_schur(lam, eta, spec, D)
            assert a.agrees(schur_tableaux(lam, eta, xs, n), D)
            if a.terms:
                assert min(sum(e) for e in a.terms) == skew_min_degree(lam, eta, spec)


def test_empty_skew():
    spec = Specialization(2)
    assert skew_schur(Partition([1]), Partition([2]), spec, 4).terms == {}
    assert skew_schur(Partition([2]), Partition([2]), spec, 4).terms == {(0, 0): 1}
