import itertools

import pytest
from hypothesis import strategies as st

from synchro import Automaton


@st.composite
def automata(draw, min_n=1, max_n=5, max_m=3):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(1, max_m))
    delta = [[draw(st.integers(0, n - 1)) for _ in range(m)] for _ in range(n)]
    return Automaton(delta)


@st.composite
def automata_with_word(draw, min_n=1, max_n=5, max_m=3, max_len=8):
    a = draw(automata(min_n=min_n, max_n=max_n, max_m=max_m))
    word = tuple(draw(st.lists(st.integers(0, a.m - 1), max_size=max_len)))
    return a, word


def binary_tables(n):
    """All n-state 2-letter transition tables."""
    for flat in itertools.product(range(n), repeat=2 * n):
        yield tuple(tuple(flat[2 * q : 2 * q + 2]) for q in range(n))


@pytest.fixture(scope="session")
def census3():
    """All synchronizing 3-state binary automata (all tables, not reduced)."""
    out = []
    from synchro import is_synchronizing

    for delta in binary_tables(3):
        a = Automaton(delta)
        if is_synchronizing(a):
            out.append(a)
    return out
