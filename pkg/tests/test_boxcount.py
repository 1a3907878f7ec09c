import pytest

from orbivertex.boxcount import (GColoring, PlanePartitionRegion, RegionError, colored_volume,
                                 enumerate_vertex, xi)
from orbivertex.partitions import Partition

E = Partition()


def test_macmahon_by_boxes():
    s = enumerate_vertex((E, E, E), 1, 6)
    assert [s.terms.get((k,), 0) for k in range(7)] == [1, 1, 3, 6, 13, 24, 48]


def test_rows_and_dfs_agree():
    for legs in [(E, E, E), (Partition([1]), E, Partition([2])), (Partition([1]),) * 3]:
        for n in (1, 2):
            a = enumerate_vertex(legs, n, 5)
            b = enumerate_vertex(legs, n, 5, method="dfs")
            assert a.agrees(b) and a.terms == b.terms


def test_single_leg_z2_low_orders():
    # one leg (1) along the third axis, Z_2: the two boxes next to it both have color 1
    s = enumerate_vertex((E, E, Partition([1])), 2, 2)
    assert s.terms == {(0, 0): 1, (0, 1): 2, (0, 2): 3, (1, 1): 2}


def test_renormalized_volume():
    legs = (Partition([1]), Partition([1]), Partition([1]))
    pi = PlanePartitionRegion.minimal(legs, 2)
    assert pi.check_stacking()
    vol = colored_volume(pi, GColoring.zn(1))
    # the corner box lies in three legs: xi = -2
    assert xi(pi, (0, 0, 0)) == -2
    assert vol[(0,)] == -2
    with pytest.raises(RegionError):
        PlanePartitionRegion(legs, {(5, 0, 0)}, 2)


def test_coloring_is_calabi_yau():
    with pytest.raises(ValueError):
        GColoring((3,), (1,), (1,), (0,))
    g = GColoring((2, 2), (1, 0), (0, 1), (1, 1))
    assert len(g.elements()) == 4
