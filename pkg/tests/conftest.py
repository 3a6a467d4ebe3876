import itertools

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from synclab.automaton import Dfa

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=20, deadline=None)
settings.load_profile("default")


@st.composite
def dfas(draw, min_states=1, max_states=6, alphabet_sizes=(1, 2, 3)):
    n = draw(st.integers(min_states, max_states))
    k = draw(st.sampled_from(alphabet_sizes))
    rows = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=k, max_size=k), min_size=n, max_size=n))
    return Dfa(n, k, tuple(map(tuple, rows)))


def words_upto(alphabet_size, max_len):
    """All words of length <= max_len, shortest first and lexicographic within a length."""
    for length in range(max_len + 1):
        yield from itertools.product(range(alphabet_size), repeat=length)


def brute_force_threshold(dfa, max_len):
    """First reset word in shortlex order, or None if none has length <= max_len."""
    full = set(range(dfa.num_states))
    for w in words_upto(dfa.alphabet_size, max_len):
        if len({dfa.run(s, w) for s in full}) == 1:
            return w
    return None


def subset_bfs_synchronizing(dfa):
    """Plain-Python subset reachability: can the full set reach a singleton?"""
    start = frozenset(dfa.states)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            if len(S) == 1:
                return True
            for x in dfa.letters:
                T = frozenset(dfa.delta[s][x] for s in S)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return False


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
