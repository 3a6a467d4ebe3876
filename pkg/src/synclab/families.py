"""Wielandt-type and Dulmage-Mendelsohn-type automata, their reset-threshold
formulas and the explicit reset words from the proofs.

Letter ``a`` is index 0 and ``b`` is index 1 throughout.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional

from .automaton import Dfa, Digraph, Word, is_strongly_connected, simple_cycle_lengths, underlying_digraph
from .errors import ConsistencyError, ConstructionError, DomainError
from .solver import DEFAULT_CAP, check_reset_word, reset_threshold

A, B = 0, 1


class Variant(str, enum.Enum):
    W = "wielandt"
    DM_AA = "dm-aa"
    DM_AB = "dm-ab"


@dataclass(frozen=True)
class FamilyParams:
    variant: Variant
    q: int
    p: int
    n: Optional[int] = None
    k: Optional[int] = None
    lam: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        p, q = self.p, self.q
        if not (1 <= p < q) or gcd(p, q) != 1:
            raise DomainError(f"need coprime 1 <= p < q, got p={p}, q={q}")
        if self.variant is Variant.W:
            if self.n is None or not q <= self.n < p + q:
                raise DomainError(f"need q <= n < p+q, got n={self.n}")
            if p < 2:
                raise DomainError("a 1-cycle cannot be drawn in a Wielandt-type automaton")
        else:
            if self.k is None or not 1 <= self.k < min(p, q - p + 1):
                raise DomainError(f"need 1 <= k < min(p, q-p+1), got k={self.k}")
            if not 0 <= self.lam < p:
                raise DomainError(f"need 0 <= lambda < p, got {self.lam}")

    @property
    def num_states(self) -> int:
        return self.n if self.variant is Variant.W else self.q + 2 * self.lam

    def label(self) -> str:
        if self.variant is Variant.W:
            return f"W({self.n},{self.q},{self.p})"
        z = self.variant.value[-1]
        sub = f"_{self.lam}" if self.lam else ""
        return f"D{sub}^a{z}({self.q},{self.p},{self.k})"


@dataclass(frozen=True)
class FormulaReport:
    params: FamilyParams
    formula_value: int
    solver_value: int
    witness_ok: Optional[bool]
    witness_len: Optional[int]
    targets: tuple

    @property
    def match(self) -> bool:
        return self.formula_value == self.solver_value


def _power(word, e):
    return tuple(word) * e


def _a(e):
    return (A,) * e


# ---------------------------------------------------------------- Wielandt-type

def _check_cycles(dfa: Dfa, expected: Counter, what: str):
    g = underlying_digraph(dfa)
    if not is_strongly_connected(g):
        raise ConstructionError(f"{what} is not strongly connected")
    got = Counter(simple_cycle_lengths(g))
    if got != expected:
        raise ConstructionError(f"{what} has cycle lengths {sorted(got.elements())}, expected {sorted(expected.elements())}")


def build_wielandt(n: int, q: int, p: int) -> Dfa:
    params = FamilyParams(Variant.W, q, p, n=n)
    rows = [[0, 0] for _ in range(n)]
    rows[0] = [q if n > q else q - p + 1, 1]
    for i in range(1, n - 1):
        if i != q - 1:
            rows[i] = [i + 1, i + 1]
    rows[q - 1] = [0, 0]
    if n > q:
        rows[n - 1] = [n - p + 1] * 2
    dfa = Dfa.from_rows(rows)
    _check_cycles(dfa, Counter({p: 1, q: 1}), params.label())
    return dfa


def wielandt_rt_formula(n: int, q: int, p: int) -> int:
    FamilyParams(Variant.W, q, p, n=n)
    return (p - 1) * (q - 1) + n - p


def wielandt_witness(n: int, q: int, p: int) -> Word:
    """``a^(q-p) (b a^(q-1))^(p-2) b a^(q-p)`` padded with ``a^(n-q)``."""
    word = _a(q - p) + _power((B,) + _a(q - 1), p - 2) + (B,) + _a(q - p) + _a(n - q)
    dfa = build_wielandt(n, q, p)
    if check_reset_word(dfa, word) is None or len(word) != wielandt_rt_formula(n, q, p):
        raise ConsistencyError(f"witness for W({n},{q},{p}) failed its self-check")
    return word


# ---------------------------------------------------------------- Dulmage-Mendelsohn-type

def dm_attachments(q: int, p: int, k: int, lam: int) -> tuple:
    """Main-cycle vertices ``(s, t)`` where the two chord paths land."""
    return (q - p + 1 + lam) % q, (q - p + k + 1 + lam) % q


def _dm_successors(q, p, k, lam):
    """Return (next-on-cycle map, chord start at 0, chord start at k)."""
    s, t = dm_attachments(q, p, k, lam)
    nxt = {i: (i + 1) % q for i in range(q)}
    if lam == 0:
        return nxt, s, t
    for j in range(lam):
        nxt[q + j] = q + j + 1 if j < lam - 1 else s
        nxt[q + lam + j] = q + lam + j + 1 if j < lam - 1 else t
    return nxt, q, q + lam


def _dm_dfa(variant, q, p, k, lam):
    nxt, c0, ck = _dm_successors(q, p, k, lam)
    rows = [[nxt[i], nxt[i]] for i in range(q + 2 * lam)]
    rows[0] = [c0, 1]
    rows[k] = [ck, k + 1] if variant is Variant.DM_AA else [k + 1, ck]
    return Dfa.from_rows(rows)


def _check_contraction(variant, q, p, k, lam):
    """The sigma-factor of the lam-th automaton must be the (lam-1)-th one, with
    the two merged pairs sitting just before the attachment points."""
    from .quotient import factor, is_isomorphic, sigma_congruence

    s, t = dm_attachments(q, p, k, lam)
    dfa = _dm_dfa(variant, q, p, k, lam)
    part = sigma_congruence(dfa)
    expected = {frozenset({q + lam - 1, (s - 1) % q}), frozenset({q + 2 * lam - 1, (t - 1) % q})}
    got = {frozenset(c) for c in part.nontrivial()}
    label = FamilyParams(variant, q, p, k=k, lam=lam).label()
    if got != expected:
        raise ConstructionError(f"{label}: sigma-classes {sorted(map(sorted, got))} do not contract the chord paths")
    if not is_isomorphic(factor(dfa, part), _dm_dfa(variant, q, p, k, lam - 1)):
        raise ConstructionError(f"{label}: sigma-factor is not the automaton with lambda={lam - 1}")


@lru_cache(maxsize=None)
def build_dm_digraph(q: int, p: int, k: int, lam: int = 0) -> Digraph:
    """``D_lam(q,p,k)``: the q-cycle plus the chord paths ``0 -> q .. q+lam-1 -> s``
    and ``k -> q+lam .. q+2lam-1 -> t``.

    For ``lam >= 1`` the digraph is accepted only if sigma-contraction leads back
    to ``D_(lam-1)`` and, inductively, to ``D_0``.
    """
    params = FamilyParams(Variant.DM_AB, q, p, k=k, lam=lam)
    if lam:
        build_dm_digraph(q, p, k, lam - 1)
    nxt, c0, ck = _dm_successors(q, p, k, lam)
    edges = {(u, v) for u, v in nxt.items()} | {(0, c0), (k, ck)}
    g = Digraph(q + 2 * lam, frozenset(edges))
    if len(edges) != q + 2 * lam + 2:
        raise ConstructionError(f"D_{lam}({q},{p},{k}) has a chord parallel to a cycle edge")
    got = Counter(simple_cycle_lengths(g))
    if not is_strongly_connected(g) or got != Counter({q: 1, p: 2}):
        raise ConstructionError(f"{params.label()} digraph has cycle lengths {sorted(got.elements())}")
    if lam:
        _check_contraction(Variant.DM_AB, q, p, k, lam)
    return g


@lru_cache(maxsize=None)
def build_dm(variant, q: int, p: int, k: int, lam: int = 0) -> Dfa:
    """Coloring of ``D_lam(q,p,k)``: chord at 0 labelled ``a``; the chord at ``k``
    labelled by the variant's second letter."""
    variant = Variant(variant)
    if variant is Variant.W:
        raise DomainError("build_dm needs dm-aa or dm-ab")
    FamilyParams(variant, q, p, k=k, lam=lam)
    build_dm_digraph(q, p, k, lam)
    if lam:
        build_dm(variant, q, p, k, lam - 1)
        _check_contraction(variant, q, p, k, lam)
    return _dm_dfa(variant, q, p, k, lam)


def dm_rt_formula(variant, q: int, p: int, k: int, lam: int = 0) -> int:
    variant = Variant(variant)
    FamilyParams(variant, q, p, k=k, lam=lam)
    base = (p - 1) * (q - 1)
    if variant is Variant.DM_AA and k == q - p:
        return base + 2 * (q - p) + lam
    return base + q - p - k + lam


def dm_witness(variant, q: int, p: int, k: int) -> Word:
    variant = Variant(variant)
    FamilyParams(variant, q, p, k=k)
    if variant is Variant.DM_AB:
        loop = (B,) + _a(q - 1)
        head = () if k == q - p else (B,) + _a(q - p - k - 1)
        word = head + _power(loop, p - 2) + (B,) + _a(q - p)
    elif variant is Variant.DM_AA:
        loop = (B,) + _a(k - 1) + (B,) + _a(q - k - 1)
        edge = q - p - k if k < q - p else q - p
        word = _a(edge) + _power(loop, p - 2) + (B,) + _a(k - 1) + (B,) + _a(edge)
    else:
        raise DomainError("dm_witness needs dm-aa or dm-ab")
    dfa = build_dm(variant, q, p, k)
    if check_reset_word(dfa, word) is None or len(word) != dm_rt_formula(variant, q, p, k):
        raise ConsistencyError(f"witness for {variant.value}({q},{p},{k}) failed its self-check")
    return word


def dm_reset_target(variant, q: int, p: int, k: int) -> int:
    """State every shortest reset word of the lam = 0 automaton ends in."""
    variant = Variant(variant)
    if variant is Variant.DM_AA and k == q - p:
        return (q - p + 1 + k) % q
    return q - p + 1


# ---------------------------------------------------------------- baseline

def build_cerny(n: int) -> Dfa:
    if n < 2:
        raise DomainError("the Cerny automaton needs n >= 2")
    rows = [[(i + 1) % n, i] for i in range(n)]
    rows[n - 1][B] = 0
    return Dfa.from_rows(rows)


# ---------------------------------------------------------------- sweeps

def wielandt_params(max_q: int, min_q: int = 3) -> Iterator[FamilyParams]:
    """Every W tuple with ``q <= max_q`` that survives cycle validation."""
    for q in range(min_q, max_q + 1):
        for p in range(2, q):
            if gcd(p, q) != 1:
                continue
            for n in range(q, p + q):
                try:
                    build_wielandt(n, q, p)
                except ConstructionError:
                    continue
                yield FamilyParams(Variant.W, q, p, n=n)


def dm_params(variant, max_q: int, max_lambda: int = 0, min_lambda: int = 0,
              max_states: Optional[int] = None, validated: bool = True) -> Iterator[FamilyParams]:
    """DM tuples with ``q <= max_q``; with ``validated`` only those whose
    construction succeeds (for ``lam >= 1`` this drops ``k + lam >= p``)."""
    variant = Variant(variant)
    for q in range(3, max_q + 1):
        for p in range(2, q):
            if gcd(p, q) != 1:
                continue
            for k in range(1, min(p, q - p + 1)):
                for lam in range(min_lambda, min(max_lambda, p - 1) + 1):
                    if max_states is not None and q + 2 * lam > max_states:
                        continue
                    params = FamilyParams(variant, q, p, k=k, lam=lam)
                    if validated:
                        try:
                            build(params)
                        except ConstructionError:
                            continue
                    yield params


def build(params: FamilyParams) -> Dfa:
    if params.variant is Variant.W:
        return build_wielandt(params.n, params.q, params.p)
    return build_dm(params.variant, params.q, params.p, params.k, params.lam)


def formula(params: FamilyParams) -> int:
    if params.variant is Variant.W:
        return wielandt_rt_formula(params.n, params.q, params.p)
    return dm_rt_formula(params.variant, params.q, params.p, params.k, params.lam)


def witness(params: FamilyParams) -> Optional[Word]:
    """Closed-form reset word, where the proofs give one (not for lam >= 1)."""
    if params.variant is Variant.W:
        return wielandt_witness(params.n, params.q, params.p)
    if params.lam == 0:
        return dm_witness(params.variant, params.q, params.p, params.k)
    return None


def verify_one(params: FamilyParams, cap: int = DEFAULT_CAP) -> FormulaReport:
    dfa = build(params)
    res = reset_threshold(dfa, cap)
    value = formula(params)
    try:
        word = witness(params)
    except ConsistencyError:
        word, ok = None, False
    else:
        ok = None if word is None else check_reset_word(dfa, word) is not None and len(word) == value
    return FormulaReport(params, value, res.threshold, ok, None if word is None else len(word), tuple(res.targets))


def verify_family(params_list, cap: int = DEFAULT_CAP) -> list:
    reports = []
    for params in params_list:
        try:
            reports.append(verify_one(params, cap))
        except ConstructionError as exc:
            raise ConstructionError(f"{params.label()}: {exc}") from exc
    return reports
