"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from decochar.groupact import MarkedPoint, Word


def words(m: int = 3, max_len: int = 6):
    letters = st.sampled_from([i for i in range(1, m + 1)] + [-i for i in range(1, m + 1)])
    return st.lists(letters, max_size=max_len).map(lambda xs: Word(tuple(xs)))


def points(m: int = 3, n: int = 3, max_len: int = 4):
    return st.builds(MarkedPoint, words(m, max_len), st.integers(1, n))


seeds = st.integers(0, 2**32)
