"""The sigma congruence, factor automata and isomorphism testing."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple, Optional

from .automaton import Dfa, Digraph, StateSet
from .errors import CongruenceError, ResourceError
from .solver import DEFAULT_CAP, reset_threshold

ISO_CAP = 24


@dataclass(frozen=True)
class Partition:
    """Partition of ``0..universe_size-1``; classes sorted by their least member."""

    universe_size: int
    classes: tuple

    def __post_init__(self):
        classes = tuple(sorted((StateSet.of(self.universe_size, c) for c in self.classes), key=lambda c: min(c)))
        seen = 0
        for c in classes:
            if not c.mask or c.mask & seen:
                raise ValueError("classes must be nonempty and disjoint")
            seen |= c.mask
        if seen != (1 << self.universe_size) - 1:
            raise ValueError("classes do not cover the universe")
        object.__setattr__(self, "classes", classes)

    @property
    def class_of(self) -> tuple:
        out = [0] * self.universe_size
        for i, c in enumerate(self.classes):
            for s in c:
                out[s] = i
        return tuple(out)

    def nontrivial(self) -> list:
        return [set(c) for c in self.classes if len(c) > 1]

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, tuple([s] for s in range(n)))

    def to_json(self) -> list:
        return [list(c) for c in self.classes]


def sigma_congruence(dfa: Dfa) -> Partition:
    """States are related iff every letter sends them to the same state."""
    groups = {}
    for s, row in enumerate(dfa.delta):
        groups.setdefault(row, []).append(s)
    return Partition(dfa.num_states, tuple(groups.values()))


def factor(dfa: Dfa, part: Partition) -> Dfa:
    if part.universe_size != dfa.num_states:
        raise CongruenceError("partition and automaton sizes differ")
    cls = part.class_of
    rows = []
    for c in part.classes:
        row = []
        for x in dfa.letters:
            images = {cls[dfa.delta[s][x]] for s in c}
            if len(images) != 1:
                raise CongruenceError(f"class {sorted(c)} is split by letter {x}")
            row.append(images.pop())
        rows.append(row)
    return Dfa(len(rows), dfa.alphabet_size, tuple(map(tuple, rows)))


def sigma_factor(dfa: Dfa) -> tuple:
    part = sigma_congruence(dfa)
    return factor(dfa, part), part


# ---------------------------------------------------------------- isomorphism

def _fingerprints(dfa: Dfa) -> list:
    # invariant under letter permutations as well as state relabeling
    indeg = [[0] * dfa.alphabet_size for _ in dfa.states]
    for s, row in enumerate(dfa.delta):
        for x, t in enumerate(row):
            indeg[t][x] += 1
    return [
        (tuple(sorted(indeg[s])), sum(t == s for t in dfa.delta[s]), len(set(dfa.delta[s])))
        for s in dfa.states
    ]


def _extend(x: Dfa, y: Dfa, perm, fx, fy, mapping, used, s, t) -> bool:
    """Map ``s -> t`` and everything it forces; False on conflict."""
    stack = [(s, t)]
    while stack:
        u, v = stack.pop()
        if mapping[u] >= 0:
            if mapping[u] != v:
                return False
            continue
        if used[v] or fx[u] != fy[v]:
            return False
        mapping[u] = v
        used[v] = True
        for a in x.letters:
            stack.append((x.delta[u][a], y.delta[v][perm[a]]))
    return True


def _search(x, y, perm, fx, fy, mapping, used):
    try:
        s = mapping.index(-1)
    except ValueError:
        return list(mapping)
    for t in range(y.num_states):
        if used[t] or fx[s] != fy[t]:
            continue
        m, u = list(mapping), list(used)
        if _extend(x, y, perm, fx, fy, m, u, s, t):
            found = _search(x, y, perm, fx, fy, m, u)
            if found is not None:
                return found
    return None


def find_isomorphism(x: Dfa, y: Dfa, allow_letter_permutation: bool = False,
                     cap: int = ISO_CAP) -> Optional[tuple]:
    """Return ``(state_map, letter_perm)`` with
    ``state_map[x.delta[s][a]] == y.delta[state_map[s]][letter_perm[a]]``, or None."""
    if max(x.num_states, y.num_states) > cap:
        raise ResourceError(f"isomorphism search capped at {cap} states")
    if x.num_states != y.num_states or x.alphabet_size != y.alphabet_size:
        return None
    fx, fy = _fingerprints(x), _fingerprints(y)
    if Counter(fx) != Counter(fy):
        return None
    perms = permutations(x.letters) if allow_letter_permutation else [tuple(x.letters)]
    for perm in perms:
        found = _search(x, y, perm, fx, fy, [-1] * x.num_states, [False] * y.num_states)
        if found is not None:
            return tuple(found), tuple(perm)
    return None


def is_isomorphic(x: Dfa, y: Dfa, allow_letter_permutation: bool = False, cap: int = ISO_CAP) -> bool:
    return find_isomorphism(x, y, allow_letter_permutation, cap) is not None


def is_isomorphic_digraph(g: Digraph, h: Digraph, cap: int = ISO_CAP) -> bool:
    """Vertex bijection carrying the edge set of ``g`` onto that of ``h``."""
    if max(g.num_vertices, h.num_vertices) > cap:
        raise ResourceError(f"isomorphism search capped at {cap} vertices")
    n = g.num_vertices
    if n != h.num_vertices or len(g.edges) != len(h.edges):
        return False

    def prints(d):
        succ, pred = d.successors(), d.predecessors()
        return [(len(succ[v]), len(pred[v]), (v, v) in d.edges) for v in range(d.num_vertices)]

    fg, fh = prints(g), prints(h)
    if Counter(fg) != Counter(fh):
        return False
    succ_g = g.successors()
    pred_g = g.predecessors()
    # visit vertices in BFS order so each new vertex touches mapped ones
    order, seen = [], set()
    for root in range(n):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in succ_g[u] + pred_g[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    mapping = {}
    used = set()

    def consistent(u, v):
        for w, z in mapping.items():
            if ((u, w) in g.edges) != ((v, z) in h.edges) or ((w, u) in g.edges) != ((z, v) in h.edges):
                return False
        return ((u, u) in g.edges) == ((v, v) in h.edges)

    def search(i):
        if i == n:
            return True
        u = order[i]
        for v in range(n):
            if v in used or fg[u] != fh[v] or not consistent(u, v):
                continue
            mapping[u] = v
            used.add(v)
            if search(i + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return search(0)


# ---------------------------------------------------------------- quotient inequality

class QuotientThresholdCheck(NamedTuple):
    rt_quotient: int
    rt_original: int
    ok: bool


def quotient_threshold_check(dfa: Dfa, cap: int = DEFAULT_CAP) -> QuotientThresholdCheck:
    """Reset thresholds of the sigma-factor and of the automaton, and whether
    ``rt(B/sigma) <= rt(B) <= rt(B/sigma) + 1`` holds."""
    rt = reset_threshold(dfa, cap).threshold
    quotient, _ = sigma_factor(dfa)
    rt_q = reset_threshold(quotient, cap).threshold
    return QuotientThresholdCheck(rt_q, rt, rt_q <= rt <= rt_q + 1)
