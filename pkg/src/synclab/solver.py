"""Exact synchronization analysis.

The reset threshold is found by a layered breadth-first search over the
subset lattice starting from the full state set.  Subsets are bit masks; a
whole layer is advanced at once with numpy using per-byte image tables.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

from .automaton import (
    Dfa,
    StateSet,
    Word,
    apply,
    check_word,
    format_word,
    is_strongly_connected,
    simple_cycle_lengths,
    underlying_digraph,
)
from .errors import DomainError, HypothesisError, NotSynchronizingError, ResourceError

DEFAULT_CAP = 24


@dataclass(frozen=True)
class ResetResult:
    threshold: int
    witness: Word
    targets: StateSet

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "witness": format_word(self.witness),
            "targets": list(self.targets),
        }


@dataclass(frozen=True)
class LowerBoundHypothesis:
    """Cycle lengths ``p < q`` plus the optional ``(t, ell, s)`` refinement."""

    p: int
    q: int
    t: Optional[int] = None
    ell: Optional[int] = None
    s: Optional[int] = None

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or gcd(self.p, self.q) != 1 or self.p >= self.q:
            raise HypothesisError(f"need coprime 1 <= p < q, got p={self.p}, q={self.q}")
        present = [v is not None for v in (self.t, self.ell, self.s)]
        if any(present) and not all(present):
            raise HypothesisError("t, ell and s must be given together")
        if self.ell is not None and self.ell < 1:
            raise HypothesisError("ell must be positive")

    @property
    def has_triple(self) -> bool:
        return self.t is not None


# ---------------------------------------------------------------- synchronizability

def _pair_index(u, v, n):
    if u > v:
        u, v = v, u
    return u * n + v


def is_synchronizing(dfa: Dfa) -> bool:
    """Every pair of states can be merged by some word (pair-automaton test)."""
    n = dfa.num_states
    if n == 1:
        return True
    preimages = {}
    merged = deque()
    good = set()
    for u in range(n):
        for v in range(u + 1, n):
            pid = u * n + v
            for x in dfa.letters:
                a, b = dfa.delta[u][x], dfa.delta[v][x]
                if a == b:
                    if pid not in good:
                        good.add(pid)
                        merged.append(pid)
                else:
                    preimages.setdefault(_pair_index(a, b, n), []).append(pid)
    while merged:
        pid = merged.popleft()
        for pre in preimages.get(pid, ()):
            if pre not in good:
                good.add(pre)
                merged.append(pre)
    return len(good) == n * (n - 1) // 2


# ---------------------------------------------------------------- subset search

def _image_tables(dfa: Dfa, dtype):
    """Per letter, one 256-entry table per byte of the subset mask."""
    n = dfa.num_states
    nbytes = (n + 7) // 8
    tables = []
    byte_vals = np.arange(256)
    for x in dfa.letters:
        col = dfa.column(x)
        chunk_tables = []
        for c in range(nbytes):
            tab = np.zeros(256, dtype=dtype)
            for bit in range(8):
                s = 8 * c + bit
                if s >= n:
                    break
                img = dtype(1) << dtype(col[s])
                tab[(byte_vals >> bit) & 1 == 1] |= img
            chunk_tables.append(tab)
        tables.append(chunk_tables)
    return tables


def _advance(layer, chunk_tables, dtype):
    out = chunk_tables[0][layer & dtype(0xFF)]
    for c in range(1, len(chunk_tables)):
        out = out | chunk_tables[c][(layer >> dtype(8 * c)) & dtype(0xFF)]
    return out


def reset_threshold(dfa: Dfa, cap: int = DEFAULT_CAP) -> ResetResult:
    """Exact reset threshold, lexicographically least shortest reset word, and targets.

    Layers are kept in discovery order with letters expanded in index order,
    so the first predecessor recorded for a subset spells its least word.
    """
    n = dfa.num_states
    if n > cap:
        raise ResourceError(f"{n} states exceeds solver cap {cap}")
    if not is_synchronizing(dfa):
        raise NotSynchronizingError("automaton is not synchronizing")
    if n == 1:
        return ResetResult(0, (), StateSet.full(1))

    dtype = np.uint32 if n <= 32 else np.uint64
    k = dfa.alphabet_size
    tables = _image_tables(dfa, dtype)
    full = (1 << n) - 1
    visited = np.zeros(1 << n, dtype=bool)
    visited[full] = True
    layer = np.array([full], dtype=dtype)
    history = []  # (parent index into previous layer, letter) per layer

    while True:
        cand = np.empty((len(layer), k), dtype=dtype)
        for x in range(k):
            cand[:, x] = _advance(layer, tables[x], dtype)
        flat = cand.ravel()
        fresh = np.flatnonzero(~visited[flat])
        _, first = np.unique(flat[fresh], return_index=True)
        keep = fresh[np.sort(first)]
        nxt = flat[keep]
        if len(nxt) == 0:
            # unreachable for synchronizing input
            raise NotSynchronizingError("subset search exhausted without a singleton")
        visited[nxt] = True
        history.append((keep // k, keep % k))
        singles = np.flatnonzero((nxt & (nxt - dtype(1))) == 0)
        if len(singles):
            break
        layer = nxt

    targets = StateSet(n, int(np.bitwise_or.reduce(nxt[singles])))
    idx = int(singles[0])
    letters = []
    for parents, labels in reversed(history):
        letters.append(int(labels[idx]))
        idx = int(parents[idx])
    witness = tuple(reversed(letters))
    return ResetResult(len(witness), witness, targets)


def check_reset_word(dfa: Dfa, word) -> Optional[int]:
    """The state the word resets to, or ``None`` if it is not a reset word."""
    image = apply(dfa, dfa.full_set(), check_word(dfa, word))
    return next(iter(image)) if len(image) == 1 else None


# ---------------------------------------------------------------- coin problem

def frobenius(p: int, q: int) -> int:
    """Largest integer not a non-negative combination of coprime ``p`` and ``q``."""
    if p < 1 or q < 1:
        raise DomainError("p and q must be positive")
    if gcd(p, q) != 1:
        raise DomainError(f"p={p} and q={q} are not coprime")
    return (p - 1) * (q - 1) - 1


def representable(m: int, p: int, q: int) -> bool:
    if p < 1 or q < 1:
        raise DomainError("p and q must be positive")
    if m < 0:
        return False
    return any((m - a * p) % q == 0 for a in range(m // p + 1))


# ---------------------------------------------------------------- lower bounds

def reach_layer(dfa: Dfa, start: int, ell: int) -> StateSet:
    """All states ``start.u`` over words ``u`` of length exactly ``ell``."""
    if not 0 <= start < dfa.num_states:
        raise ValueError(f"state {start} out of range")
    if ell < 0:
        raise ValueError("ell must be non-negative")
    layer = {start}
    for _ in range(ell):
        layer = {dfa.delta[s][x] for s in layer for x in dfa.letters}
    return StateSet.of(dfa.num_states, layer)


def cycle_lower_bound(dfa: Dfa, hyp: LowerBoundHypothesis, cap: int = DEFAULT_CAP) -> int:
    """Lower bound ``(p-1)(q-1)`` on the reset threshold, plus ``ell`` when the
    refinement triple is supplied.

    Every hypothesis is checked here: strong connectivity, synchronizability,
    cycle lengths exactly ``{p, q}``, and for the triple that all words of
    length ``ell`` send ``t`` to ``s`` and that some shortest reset word ends
    in ``s``.
    """
    g = underlying_digraph(dfa)
    if not is_strongly_connected(g):
        raise HypothesisError("automaton is not strongly connected")
    if not is_synchronizing(dfa):
        raise HypothesisError("automaton is not synchronizing")
    lengths = set(simple_cycle_lengths(g))
    if lengths != {hyp.p, hyp.q}:
        raise HypothesisError(f"cycle lengths {sorted(lengths)} differ from {{{hyp.p}, {hyp.q}}}")
    bound = (hyp.p - 1) * (hyp.q - 1)
    if not hyp.has_triple:
        return bound
    layer = reach_layer(dfa, hyp.t, hyp.ell)
    if set(layer) != {hyp.s}:
        raise HypothesisError(f"words of length {hyp.ell} send {hyp.t} to {sorted(layer)}, not only {hyp.s}")
    if hyp.s not in reset_threshold(dfa, cap).targets:
        raise HypothesisError(f"no shortest reset word ends in state {hyp.s}")
    return bound + hyp.ell


# ---------------------------------------------------------------- cycle image

def cycle_image_automaton(p: int, q: int) -> Dfa:
    """Smallest binary automaton with the cycle-image labelling.

    States ``0..p-1`` form the cycle ``C`` (``0.a = 1``, ``i.x = i+1 mod p``);
    letter ``b`` leaves 0 along a detour ``p, p+1, ..., q-1`` that re-enters
    ``C`` at 1, so that ``0.ba^(q-1) = 0``.
    """
    if not (2 <= p < q) or gcd(p, q) != 1:
        raise DomainError(f"need coprime 2 <= p < q, got p={p}, q={q}")
    rows = [[0, 0] for _ in range(q)]
    rows[0] = [1, p]
    for i in range(1, p):
        rows[i] = [(i + 1) % p] * 2
    for j in range(p, q):
        rows[j] = [j + 1 if j < q - 1 else 1] * 2
    return Dfa.from_rows(rows)


def cycle_order(dfa: Dfa, cycle: StateSet, zero: int) -> list:
    """Order the cycle as ``zero, zero.a, ...``, checking it closes after ``|cycle|`` steps
    with both letters agreeing away from ``zero``."""
    order = [zero]
    if zero not in cycle:
        raise HypothesisError(f"state {zero} is not in the cycle")
    cur = dfa.delta[zero][0]
    while cur != zero:
        if cur not in cycle or cur in order:
            raise HypothesisError(f"state {cur} breaks the cycle through {zero}")
        row = set(dfa.delta[cur])
        if len(row) != 1:
            raise HypothesisError(f"letters disagree at cycle state {cur}")
        order.append(cur)
        cur = dfa.delta[cur][0]
    if len(order) != len(cycle):
        raise HypothesisError("cycle does not visit every state of the given set")
    return order


def cycle_image(p: int, q: int, dfa: Dfa, cycle: StateSet, zero: int) -> StateSet:
    """Image of the ``p``-cycle under ``(ba^(q-1))^(p-2)`` after verifying the
    preconditions by simulation."""
    if not (2 <= p < q) or gcd(p, q) != 1:
        raise HypothesisError(f"need coprime 2 <= p < q, got p={p}, q={q}")
    if dfa.alphabet_size != 2:
        raise HypothesisError("cycle image needs a binary alphabet")
    if cycle.universe_size != dfa.num_states or len(cycle) != p:
        raise HypothesisError(f"cycle must have {p} states of this automaton")
    cycle_order(dfa, cycle, zero)
    loop = (1,) + (0,) * (q - 1)
    if dfa.run(zero, loop) != zero:
        raise HypothesisError(f"ba^{q - 1} does not fix state {zero}")
    return apply(dfa, cycle, loop * (p - 2))


# ---------------------------------------------------------------- random corpora

def random_dfa(n: int, alphabet_size: int, rng) -> Dfa:
    """Uniform random transition table; ``rng`` is a ``random.Random``."""
    return Dfa(n, alphabet_size, tuple(tuple(rng.randrange(n) for _ in range(alphabet_size)) for _ in range(n)))


def random_synchronizing(n: int, alphabet_size: int, rng, max_tries: int = 10_000) -> Dfa:
    for _ in range(max_tries):
        dfa = random_dfa(n, alphabet_size, rng)
        if is_synchronizing(dfa):
            return dfa
    raise ResourceError(f"no synchronizing automaton in {max_tries} draws")
