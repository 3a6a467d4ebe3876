"""Complete deterministic automata, digraphs, state sets and words.

States and letters are plain integer indices.  Letter 0 is written ``a``,
letter 1 is ``b`` and so on, both in JSON and in word text.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, InvalidWordError, ParseError, ResourceError

LETTERS = "abcdefghijklmnopqrstuvwxyz"

# default budget for exhaustive simple-cycle enumeration
MAX_CYCLES = 10_000
MAX_CYCLE_VERTICES = 64

Word = tuple  # tuple[int, ...] of letter indices


@dataclass(frozen=True)
class Dfa:
    """Complete DFA without initial or final states.

    ``delta[s][x]`` is the image of state ``s`` under letter ``x``.
    """

    num_states: int
    alphabet_size: int
    delta: tuple

    def __post_init__(self):
        if self.num_states < 1 or self.alphabet_size < 1:
            raise ValueError("automaton needs at least one state and one letter")
        rows = tuple(tuple(int(t) for t in row) for row in self.delta)
        if len(rows) != self.num_states:
            raise ValueError(f"expected {self.num_states} rows, got {len(rows)}")
        for s, row in enumerate(rows):
            if len(row) != self.alphabet_size:
                raise ValueError(f"row {s} has {len(row)} entries, expected {self.alphabet_size}")
            for t in row:
                if not 0 <= t < self.num_states:
                    raise ValueError(f"row {s} has out-of-range image {t}")
        object.__setattr__(self, "delta", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Dfa":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("automaton needs at least one state")
        return cls(len(rows), len(rows[0]), tuple(map(tuple, rows)))

    @property
    def states(self) -> range:
        return range(self.num_states)

    @property
    def letters(self) -> range:
        return range(self.alphabet_size)

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]

    def run(self, state: int, word: Iterable[int]) -> int:
        for x in word:
            state = self.delta[state][x]
        return state

    def column(self, letter: int) -> tuple:
        return tuple(row[letter] for row in self.delta)

    def full_set(self) -> "StateSet":
        return StateSet.full(self.num_states)

    def __str__(self):
        head = "     " + " ".join(f"{letter_name(x):>3}" for x in self.letters)
        body = [f"{s:>3}: " + " ".join(f"{t:>3}" for t in row) for s, row in enumerate(self.delta)]
        return "\n".join([head, *body])


@dataclass(frozen=True)
class StateSet:
    """Subset of ``0..universe_size-1`` stored as a bit mask."""

    universe_size: int
    mask: int = 0

    def __post_init__(self):
        if self.universe_size < 1:
            raise ValueError("universe must be nonempty")
        if self.mask < 0 or self.mask >> self.universe_size:
            raise ValueError("members outside the universe")

    @classmethod
    def of(cls, universe_size: int, members: Iterable[int]) -> "StateSet":
        mask = 0
        for m in members:
            if not 0 <= m < universe_size:
                raise ValueError(f"state {m} outside universe of size {universe_size}")
            mask |= 1 << m
        return cls(universe_size, mask)

    @classmethod
    def full(cls, universe_size: int) -> "StateSet":
        return cls(universe_size, (1 << universe_size) - 1)

    @property
    def members(self) -> tuple:
        return tuple(self)

    def __iter__(self) -> Iterator[int]:
        m, i = self.mask, 0
        while m:
            if m & 1:
                yield i
            m >>= 1
            i += 1

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, state):
        return 0 <= state < self.universe_size and bool(self.mask >> state & 1)

    def __or__(self, other: "StateSet") -> "StateSet":
        if other.universe_size != self.universe_size:
            raise DimensionError("universe mismatch")
        return StateSet(self.universe_size, self.mask | other.mask)

    def __repr__(self):
        return f"StateSet({self.universe_size}, {set(self) or '{}'})"


@dataclass(frozen=True)
class Digraph:
    """Directed graph without parallel edges; loops are allowed."""

    num_vertices: int
    edges: frozenset

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("digraph needs at least one vertex")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.num_vertices - 1}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Sequence[int]]) -> "Digraph":
        edges = list(edges)
        pairs = [tuple(e) for e in edges]
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate edges")
        return cls(num_vertices, frozenset(pairs))

    def successors(self) -> list:
        out = [[] for _ in range(self.num_vertices)]
        for u, v in sorted(self.edges):
            out[u].append(v)
        return out

    def predecessors(self) -> list:
        inc = [[] for _ in range(self.num_vertices)]
        for u, v in sorted(self.edges):
            inc[v].append(u)
        return inc

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        return Digraph(self.num_vertices, frozenset((perm[u], perm[v]) for u, v in self.edges))


def letter_name(x: int) -> str:
    if not 0 <= x < len(LETTERS):
        raise InvalidWordError(f"no name for letter index {x}")
    return LETTERS[x]


def check_word(dfa: Dfa, word: Iterable[int]) -> Word:
    word = tuple(word)
    for pos, x in enumerate(word):
        if not 0 <= x < dfa.alphabet_size:
            raise InvalidWordError(f"letter {x} at position {pos} outside alphabet of size {dfa.alphabet_size}")
    return word


def apply(dfa: Dfa, states: StateSet, word: Iterable[int]) -> StateSet:
    """Image ``{s.w : s in states}`` of a state set under a word."""
    if states.universe_size != dfa.num_states:
        raise DimensionError(f"state set over {states.universe_size} states, automaton has {dfa.num_states}")
    word = check_word(dfa, word)
    return StateSet.of(dfa.num_states, {dfa.run(s, word) for s in states})


def underlying_digraph(dfa: Dfa) -> Digraph:
    return Digraph(dfa.num_states, frozenset((s, t) for s, row in enumerate(dfa.delta) for t in row))


def _reach(adj, start):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    n = g.num_vertices
    return len(_reach(g.successors(), 0)) == n and len(_reach(g.predecessors(), 0)) == n


def simple_cycles(g: Digraph, max_cycles: int = MAX_CYCLES, max_vertices: int = MAX_CYCLE_VERTICES):
    """Yield every simple directed cycle once, as a vertex list starting at its minimum.

    Plain backtracking restricted to vertices above the root; meant for the
    sparse digraphs of this package, hence the budgets.
    """
    if g.num_vertices > max_vertices:
        raise ResourceError(f"{g.num_vertices} vertices exceeds cycle-enumeration cap {max_vertices}")
    succ = g.successors()
    count = 0
    for root in range(g.num_vertices):
        path = [root]
        on_path = {root}
        iters = [iter(succ[root])]
        while iters:
            v = next(iters[-1], None)
            if v is None:
                iters.pop()
                on_path.discard(path.pop())
                continue
            if v == root:
                count += 1
                if count > max_cycles:
                    raise ResourceError(f"more than {max_cycles} simple cycles")
                yield list(path)
            elif v > root and v not in on_path:
                path.append(v)
                on_path.add(v)
                iters.append(iter(succ[v]))


def simple_cycle_lengths(g: Digraph, max_cycles: int = MAX_CYCLES, max_vertices: int = MAX_CYCLE_VERTICES) -> list:
    """Sorted multiset (as a list) of simple-cycle lengths."""
    return sorted(len(c) for c in simple_cycles(g, max_cycles, max_vertices))


# ---------------------------------------------------------------- words

_TOKEN = re.compile(r"\s*(?:(?P<letter>[a-z])|(?P<open>\()|(?P<close>\))|\^(?P<exp>\d+)|(?P<eps>ε))")


def parse_word(text: str, alphabet_size: int | None = None) -> Word:
    """Parse word text such as ``"a^2(ba^4)^1ba^2"`` into letter indices.

    Exponents apply to the preceding letter or parenthesised group.  The empty
    string and ``ε`` denote the empty word.
    """
    stack: list = [[]]
    last: list | None = None
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", f"column {pos}")
        if m.group("letter"):
            x = LETTERS.index(m.group("letter"))
            if alphabet_size is not None and x >= alphabet_size:
                raise InvalidWordError(f"letter {m.group('letter')!r} outside alphabet of size {alphabet_size}")
            last = [x]
            stack[-1].extend(last)
        elif m.group("open"):
            stack.append([])
            last = None
        elif m.group("close"):
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", f"column {pos}")
            last = stack.pop()
            stack[-1].extend(last)
        elif m.group("exp") is not None:
            if last is None:
                raise ParseError("exponent without a base", f"column {pos}")
            e = int(m.group("exp"))
            # base already emitted once
            del stack[-1][len(stack[-1]) - len(last):]
            stack[-1].extend(last * e)
            last = None
        else:
            last = None
        pos = m.end()
    if len(stack) != 1:
        raise ParseError("unbalanced '('", f"column {len(text)}")
    return tuple(stack[0])


def format_word(word: Iterable[int]) -> str:
    return "".join(letter_name(x) for x in word)


# ---------------------------------------------------------------- JSON

def dfa_to_dict(dfa: Dfa) -> dict:
    return {
        "states": dfa.num_states,
        "alphabet": [letter_name(x) for x in dfa.letters],
        "delta": [list(row) for row in dfa.delta],
    }


def serialize(dfa: Dfa) -> str:
    return json.dumps(dfa_to_dict(dfa))


def dfa_from_dict(data) -> Dfa:
    if not isinstance(data, dict):
        raise ParseError("automaton must be a JSON object", "$")
    for key in ("states", "alphabet", "delta"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", "$")
    n, alphabet, delta = data["states"], data["alphabet"], data["delta"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("'states' must be a positive integer", "$.states")
    if not isinstance(alphabet, list) or not alphabet:
        raise ParseError("'alphabet' must be a nonempty list", "$.alphabet")
    expected = [letter_name(x) for x in range(min(len(alphabet), len(LETTERS)))]
    if alphabet != expected:
        raise ParseError(f"alphabet must be {expected}", "$.alphabet")
    if not isinstance(delta, list) or len(delta) != n:
        raise ParseError(f"'delta' must be a list of {n} rows", "$.delta")
    for s, row in enumerate(delta):
        if not isinstance(row, list) or len(row) != len(alphabet):
            raise ParseError(f"row must list {len(alphabet)} images", f"$.delta[{s}]")
        for x, t in enumerate(row):
            if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < n:
                raise ParseError(f"image {t!r} not a state in 0..{n - 1}", f"$.delta[{s}][{x}]")
    return Dfa(n, len(alphabet), tuple(map(tuple, delta)))


def parse(text: str) -> Dfa:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return dfa_from_dict(data)


def digraph_to_dict(g: Digraph) -> dict:
    return {"vertices": g.num_vertices, "edges": [list(e) for e in sorted(g.edges)]}


def digraph_from_dict(data) -> Digraph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ParseError("digraph must be an object with 'vertices' and 'edges'", "$")
    n = data["vertices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("'vertices' must be a positive integer", "$.vertices")
    seen = set()
    for i, e in enumerate(data["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) and 0 <= v < n for v in e)):
            raise ParseError(f"edge must be [u, v] with 0 <= u, v < {n}", f"$.edges[{i}]")
        if tuple(e) in seen:
            raise ParseError("duplicate edge", f"$.edges[{i}]")
        seen.add(tuple(e))
    return Digraph(n, frozenset(seen))


def parse_digraph(text: str) -> Digraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return digraph_from_dict(data)


def serialize_digraph(g: Digraph) -> str:
    return json.dumps(digraph_to_dict(g))
