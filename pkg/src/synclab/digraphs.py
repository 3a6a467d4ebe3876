"""Primitivity, exponents and colorings of digraphs.

Boolean matrices are stored row-packed: row ``i`` is an int whose bit ``j``
is set iff there is an edge ``i -> j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial, gcd
from typing import NamedTuple

from .automaton import Dfa, Digraph, is_strongly_connected, serialize, underlying_digraph
from .errors import ConsistencyError, DomainError, ResourceError
from .quotient import is_isomorphic
from .solver import DEFAULT_CAP, is_synchronizing, reset_threshold

COLORING_BUDGET = 100_000
MATRIX_CAP = 256


@dataclass(frozen=True)
class BoolMatrix:
    dimension: int
    rows: tuple

    @classmethod
    def adjacency(cls, g: Digraph) -> "BoolMatrix":
        rows = [0] * g.num_vertices
        for u, v in g.edges:
            rows[u] |= 1 << v
        return cls(g.num_vertices, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        out = []
        for row in self.rows:
            acc, j = 0, 0
            while row:
                if row & 1:
                    acc |= other.rows[j]
                row >>= 1
                j += 1
            out.append(acc)
        return BoolMatrix(self.dimension, tuple(out))

    def is_positive(self) -> bool:
        full = (1 << self.dimension) - 1
        return all(r == full for r in self.rows)

    def entry(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)


def period(g: Digraph) -> int:
    """gcd of all cycle lengths of a strongly connected digraph (0 if acyclic)."""
    level = {0: 0}
    queue = [0]
    succ = g.successors()
    for u in queue:
        for v in succ[u]:
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    d = 0
    for u, v in g.edges:
        if u in level and v in level:
            d = gcd(d, level[u] + 1 - level[v])
    return abs(d)


def is_primitive(g: Digraph) -> bool:
    return is_strongly_connected(g) and period(g) == 1


def exponent(g: Digraph) -> int:
    """Least ``t`` with every entry of the ``t``-th boolean adjacency power true.

    Binary lifting over repeated squares; positivity is monotone in ``t`` for
    primitive digraphs, so the largest non-positive power is found bit by bit.
    """
    n = g.num_vertices
    if n > MATRIX_CAP:
        raise ResourceError(f"{n} vertices exceeds matrix cap {MATRIX_CAP}")
    if not is_primitive(g):
        raise DomainError("digraph is not primitive")
    bound = (n - 1) ** 2 + 2
    m = BoolMatrix.adjacency(g)
    squares = [m]
    while (1 << len(squares)) <= bound:
        squares.append(squares[-1] @ squares[-1])
    if m.is_positive():
        return 1
    acc, t = m, 1
    for i in reversed(range(len(squares))):
        if t + (1 << i) > bound:
            continue
        cand = acc @ squares[i]
        if not cand.is_positive():
            acc, t = cand, t + (1 << i)
    if t + 1 > bound:
        raise ConsistencyError(f"no positive power up to {bound}; primitivity check is wrong")
    return t + 1


class GapCheck(NamedTuple):
    exponent: int
    threshold: int
    ok: bool


def exponent_rt_gap_check(dfa: Dfa, cap: int = DEFAULT_CAP) -> GapCheck:
    """Compare the reset threshold with ``exponent - n`` of the underlying digraph."""
    exp = exponent(underlying_digraph(dfa))
    rt = reset_threshold(dfa, cap).threshold
    return GapCheck(exp, rt, rt > exp - dfa.num_states)


# ---------------------------------------------------------------- colorings

class Coloring(NamedTuple):
    dfa: Dfa
    synchronizing: bool


def enumerate_colorings(g: Digraph, budget: int = COLORING_BUDGET) -> list:
    """All colorings of ``g`` up to isomorphism (letter permutations allowed).

    The alphabet size is the largest out-degree ``d``.  Vertices of out-degree
    1 send every letter along their single edge; all others must have exactly
    ``d`` successors.
    """
    succ = g.successors()
    d = max(len(s) for s in succ)
    if d == 0 or any(len(s) not in (1, d) for s in succ):
        raise DomainError("every vertex needs out-degree 1 or the common out-degree d")
    branching = [v for v in range(g.num_vertices) if len(succ[v]) == d and d > 1]
    total = factorial(d) ** len(branching)
    if total > budget:
        raise ResourceError(f"{total} colorings exceeds budget {budget}")

    base = [[s[0]] * d if len(s) == 1 else None for s in succ]
    reps = []
    for choice in product(*(list(permutations(succ[v])) for v in branching)):
        rows = list(base)
        for v, perm in zip(branching, choice):
            rows[v] = list(perm)
        dfa = Dfa(g.num_vertices, d, tuple(map(tuple, rows)))
        if not any(is_isomorphic(dfa, r, allow_letter_permutation=True) for r in reps):
            reps.append(dfa)
    reps.sort(key=serialize)
    return [Coloring(r, is_synchronizing(r)) for r in reps]
