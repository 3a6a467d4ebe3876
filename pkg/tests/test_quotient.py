import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from synclab.automaton import Dfa, underlying_digraph
from synclab.errors import CongruenceError, ResourceError
from synclab.families import build, build_cerny, build_dm, build_wielandt, dm_params, wielandt_params
from synclab.quotient import (
    Partition,
    factor,
    find_isomorphism,
    is_isomorphic,
    is_isomorphic_digraph,
    quotient_threshold_check,
    sigma_congruence,
    sigma_factor,
)
from synclab.solver import random_synchronizing, reset_threshold

from conftest import dfas


def relabel(dfa, perm, letters=None):
    """Rename state s to perm[s] and letter x to letters[x]."""
    letters = letters or list(dfa.letters)
    rows = [[0] * dfa.alphabet_size for _ in dfa.states]
    for s in dfa.states:
        for x in dfa.letters:
            rows[perm[s]][letters[x]] = perm[dfa.delta[s][x]]
    return Dfa(dfa.num_states, dfa.alphabet_size, tuple(map(tuple, rows)))


def brute_isomorphic(x, y, letters=False):
    if (x.num_states, x.alphabet_size) != (y.num_states, y.alphabet_size):
        return False
    letter_perms = itertools.permutations(x.letters) if letters else [tuple(x.letters)]
    for lp in letter_perms:
        for perm in itertools.permutations(x.states):
            if relabel(x, perm, list(lp)) == y:
                return True
    return False


class TestSigma:
    def test_wielandt_class(self):
        part = sigma_congruence(build_wielandt(6, 5, 3))
        assert part.nontrivial() == [{3, 5}]

    def test_discrete(self):
        assert sigma_congruence(build_cerny(4)) == Partition.discrete(4)

    def test_dm_lambda(self):
        part = sigma_congruence(build_dm("dm-ab", 5, 3, 1, 1))
        assert sorted(map(sorted, part.nontrivial())) == [[3, 5], [4, 6]]

    @given(dfas())
    def test_classes_share_rows(self, dfa):
        part = sigma_congruence(dfa)
        for c in part.classes:
            assert len({dfa.delta[s] for s in c}) == 1
        assert len({dfa.delta[min(c)] for c in part.classes}) == len(part.classes)

    def test_partition_validation(self):
        with pytest.raises(ValueError):
            Partition(3, ([0, 1], [1, 2]))
        with pytest.raises(ValueError):
            Partition(3, ([0, 1],))


class TestFactor:
    def test_wielandt_drops_one_state(self):
        quotient, _ = sigma_factor(build_wielandt(6, 5, 3))
        assert is_isomorphic(quotient, build_wielandt(5, 5, 3))

    def test_not_a_congruence(self):
        # 0 and 1 both go to distinct classes under a
        dfa = Dfa(3, 1, ((1,), (2,), (2,)))
        with pytest.raises(CongruenceError):
            factor(dfa, Partition(3, ([0, 1], [2])))

    def test_wielandt_chain(self):
        for params in wielandt_params(9):
            if params.n > params.q:
                quotient, _ = sigma_factor(build(params))
                assert is_isomorphic(quotient, build_wielandt(params.n - 1, params.q, params.p))

    def test_dm_chain(self):
        for variant in ("dm-aa", "dm-ab"):
            for params in dm_params(variant, 8, 3, min_lambda=1):
                quotient, _ = sigma_factor(build(params))
                assert is_isomorphic(quotient, build_dm(variant, params.q, params.p, params.k, params.lam - 1))

    def test_threshold_drop_example(self):
        assert tuple(quotient_threshold_check(build_wielandt(6, 5, 3))) == (10, 11, True)

    def test_threshold_sandwich_random(self):
        rng = random.Random(11)
        for _ in range(200):
            dfa = random_synchronizing(rng.randint(2, 8), 2, rng)
            assert quotient_threshold_check(dfa).ok


class TestIsomorphism:
    @given(dfas(max_states=5, alphabet_sizes=(1, 2)), dfas(max_states=5, alphabet_sizes=(1, 2)))
    def test_against_permutations(self, x, y):
        assert is_isomorphic(x, y) == brute_isomorphic(x, y)
        assert is_isomorphic(x, y, allow_letter_permutation=True) == brute_isomorphic(x, y, letters=True)

    @given(dfas(max_states=6), st.randoms(use_true_random=False))
    def test_relabeled_copy(self, dfa, rng):
        perm = list(dfa.states)
        rng.shuffle(perm)
        letters = list(dfa.letters)
        rng.shuffle(letters)
        y = relabel(dfa, perm)
        state_map, _ = find_isomorphism(dfa, y)
        assert relabel(dfa, state_map) == y
        assert is_isomorphic(dfa, relabel(dfa, perm, letters), allow_letter_permutation=True)

    def test_letter_swap_matters(self):
        c = build_cerny(4)
        swapped = relabel(c, list(c.states), [1, 0])
        assert not is_isomorphic(c, swapped)
        assert is_isomorphic(c, swapped, allow_letter_permutation=True)

    def test_cap(self):
        big = build_cerny(30)
        with pytest.raises(ResourceError):
            is_isomorphic(big, big)

    def test_digraphs(self):
        g = underlying_digraph(build_dm("dm-aa", 7, 4, 2))
        perm = [3, 1, 6, 0, 2, 5, 4]
        assert is_isomorphic_digraph(g, g.relabel(perm))
        assert not is_isomorphic_digraph(g, underlying_digraph(build_dm("dm-aa", 7, 4, 1)))

    def test_thresholds_invariant(self):
        rng = random.Random(3)
        for _ in range(30):
            dfa = random_synchronizing(6, 2, rng)
            perm = list(range(6))
            rng.shuffle(perm)
            assert reset_threshold(relabel(dfa, perm)).threshold == reset_threshold(dfa).threshold
