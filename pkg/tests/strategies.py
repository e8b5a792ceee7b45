"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from tripart import Partition


def weak_sequences(max_part=30, max_len=12):
    """Non-increasing positive integer tuples."""
    return st.lists(
        st.integers(1, max_part), min_size=1, max_size=max_len
    ).map(lambda xs: tuple(sorted(xs, reverse=True)))


def partitions(max_part=30, max_len=12):
    return weak_sequences(max_part, max_len).map(Partition.from_weak_sequence)
