import itertools
from collections import Counter

import pytest

from synclab.automaton import Dfa
from synclab.errors import NotSynchronizingError, ResourceError
from synclab.explore import explore_rn
from synclab.solver import reset_threshold


def census_by_solver(n):
    counts, bad = Counter(), 0
    maps = list(itertools.product(range(n), repeat=n))
    for a in maps:
        for b in maps:
            try:
                counts[reset_threshold(Dfa(n, 2, tuple(zip(a, b)))).threshold] += 1
            except NotSynchronizingError:
                bad += 1
    return counts, bad


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_solver(n):
    census = explore_rn(n)
    counts, bad = census_by_solver(n)
    assert census.counts == counts
    assert census.non_synchronizing == bad
    assert census.total == n ** (2 * n)


@pytest.mark.slow
def test_matches_solver_four_states():
    census = explore_rn(4, chunk=1 << 12)
    counts, bad = census_by_solver(4)
    assert (census.counts, census.non_synchronizing) == (counts, bad)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_endpoint(n):
    assert max(explore_rn(n).thresholds) == (n - 1) ** 2


def test_chunking_irrelevant():
    assert explore_rn(3, chunk=7).counts == explore_rn(3).counts


def test_to_dict():
    d = explore_rn(2).to_dict()
    assert d["thresholds"] == [1] and d["total"] == 16


def test_refuses_large_n():
    with pytest.raises(ResourceError):
        explore_rn(6)
