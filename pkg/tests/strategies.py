from hypothesis import strategies as st

from orbivertex.partitions import Partition


def partitions(max_size=8, max_parts=4):
    return st.lists(st.integers(1, max_size), max_size=max_parts).map(
        lambda xs: Partition(sorted(xs, reverse=True))).filter(lambda p: p.size <= max_size)
