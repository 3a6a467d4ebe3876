"""Exhaustive reset-threshold census over all binary automata with few states.

Every transition table is enumerated (no canonization).  A chunk of automata
is advanced in lock-step: for each automaton the current BFS layer of the
subset lattice is one machine word with bit ``S`` set iff subset ``S`` is in
the layer, so one step is ``2^n`` vectorized shift-and-or operations.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import ResourceError

MAX_EXPLORE_STATES = 5


@dataclass
class Census:
    n: int
    counts: Counter  # reset threshold -> number of transition tables
    non_synchronizing: int
    total: int

    @property
    def thresholds(self) -> list:
        return sorted(self.counts)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "thresholds": self.thresholds,
            "counts": {str(k): self.counts[k] for k in self.thresholds},
            "non_synchronizing": self.non_synchronizing,
            "total": self.total,
        }


def _all_maps(n):
    return np.array(list(product(range(n), repeat=n)), dtype=np.int64)


def _subset_images(maps, n):
    """``out[i, S]`` = image mask of subset ``S`` under map ``i``."""
    m = len(maps)
    out = np.zeros((m, 1 << n), dtype=np.int64)
    for S in range(1, 1 << n):
        low = (S & -S).bit_length() - 1
        out[:, S] = out[:, S & (S - 1)] | (np.int64(1) << maps[:, low])
    return out


def _layer_thresholds(step, n, max_steps):
    """Reset threshold per automaton, -1 if no singleton is ever reached."""
    m = step.shape[0]
    singles = 0
    for s in range(n):
        singles |= 1 << (1 << s)
    singles = np.uint64(singles)
    layer = np.full(m, np.uint64(1) << np.uint64((1 << n) - 1), dtype=np.uint64)
    result = np.full(m, -1, dtype=np.int64)
    active = np.arange(m)
    if n == 1:
        return np.zeros(m, dtype=np.int64)
    for d in range(1, max_steps + 1):
        nxt = np.zeros(len(active), dtype=np.uint64)
        sub = step[active]
        for S in range(1, 1 << n):
            hit = (layer >> np.uint64(S)) & np.uint64(1)
            nxt |= hit * sub[:, S]
        done = (nxt & singles) != 0
        result[active[done]] = d
        keep = ~done & (nxt != layer)  # a fixed layer never reaches a singleton
        active, layer = active[keep], nxt[keep]
        if not len(active):
            break
    return result


def explore_rn(n: int, chunk: int = 1 << 18) -> Census:
    """Reset thresholds attained by binary ``n``-state automata, with counts."""
    if not 1 <= n <= MAX_EXPLORE_STATES:
        raise ResourceError(f"exhaustive census supports 1 <= n <= {MAX_EXPLORE_STATES}")
    maps = _all_maps(n)
    images = _subset_images(maps, n)
    bits = (np.uint64(1) << images.astype(np.uint64))
    num = len(maps)
    # shortest paths in the subset lattice avoid revisiting subsets of size >= 2
    max_steps = (1 << n) - n - 1
    counts = Counter()
    nonsync = 0
    for start in range(0, num * num, chunk):
        idx = np.arange(start, min(start + chunk, num * num))
        ia, ib = idx // num, idx % num
        step = bits[ia] | bits[ib]
        rts = _layer_thresholds(step, n, max(max_steps, 1))
        nonsync += int((rts < 0).sum())
        vals, cnt = np.unique(rts[rts >= 0], return_counts=True)
        counts.update(dict(zip(vals.tolist(), cnt.tolist())))
    return Census(n, counts, nonsync, num * num)
