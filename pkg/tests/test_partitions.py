from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbivertex.partitions import (Partition, a_factor, add_ribbon, c_factor, colored_counts,
                                   conjugate, from_core_quotient, hook_lengths, hooks_colored,
                                   interlacing_above, interlacing_below, is_multiregular,
                                   n_core, n_quotient_core, partitions_of, to_edge_sequence)
from strategies import partitions


def test_parse_and_print():
    assert Partition.parse("3,1") == Partition([3, 1])
    assert Partition.parse("") == Partition()
    assert Partition.parse("2, 2, 0") == Partition([2, 2])
    with pytest.raises(ValueError):
        Partition.parse("3,x")
    with pytest.raises(ValueError):
        Partition([1, 2])


def test_partition_counts():
    assert [sum(1 for _ in partitions_of(k)) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_colors_and_factors():
    lam = Partition([3, 1])
    # cells (i, j) with i < lam_j: (0,0) (1,0) (2,0) (0,1)
    assert sorted(lam.cells()) == [(0, 0), (0, 1), (1, 0), (2, 0)]
    assert colored_counts(lam, 2) == [2, 2]
    assert is_multiregular(lam, 2)
    assert a_factor(lam, 3) == [0, 1, 2]
    assert c_factor(Partition([2]), 1, 0, 1) == [Fraction(1)]


def test_hooks():
    assert sorted(hook_lengths(Partition([3, 1]))) == [1, 1, 2, 4]
    for _, h in hooks_colored(Partition([2, 2]), 2):
        assert sum(h) in (1, 2, 3)


@given(partitions())
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


@given(partitions(), st.integers(1, 4))
def test_colored_counts_sum(lam, n):
    assert sum(colored_counts(lam, n)) == lam.size
    assert colored_counts(conjugate(lam), n) == [colored_counts(lam, n)[(-k) % n] for k in range(n)]


@given(partitions(), st.integers(1, 4))
def test_hook_sum(lam, n):
    total = sum(sum(h) for _, h in hooks_colored(lam, n))
    assert total == sum(hook_lengths(lam))


@given(partitions(), st.integers(-3, 3))
def test_edge_sequence_round_trip(lam, c):
    seq = to_edge_sequence(lam, c)
    for t in range(-20, 20):
        assert seq.value(t) in (1, -1)
    assert seq.value(-100) == 1 and seq.value(100) == -1


@settings(max_examples=60)
@given(partitions(max_size=10, max_parts=5), st.integers(1, 4))
def test_core_quotient_round_trip(lam, n):
    ncq = n_quotient_core(lam, n)
    assert sum(ncq.charges) == 0
    assert from_core_quotient(ncq) == lam
    core = n_core(lam, n)
    assert (lam.size - core.size) % n == 0
    assert n_quotient_core(core, n).is_core()
    assert lam.size == core.size + n * sum(q.size for q in ncq.quotients)


def test_add_ribbon():
    assert add_ribbon(Partition(), -1, 0) == Partition([1])
    assert add_ribbon(Partition(), -1, 1) == Partition([2])
    assert add_ribbon(Partition(), -2, 0) == Partition([1, 1])
    with pytest.raises(ValueError):
        add_ribbon(Partition(), 0, 1)


@given(partitions(max_size=6))
def test_interlacing_duality(lam):
    for mu in interlacing_below(lam):
        assert lam in set(interlacing_above(mu, lam.size - mu.size))
