"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line; the lines are printed as
they happen and again in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""
import itertools
import random
import sys
import time
from math import gcd

import pytest

from synclab.automaton import StateSet
from synclab.digraphs import enumerate_colorings, exponent_rt_gap_check
from synclab.explore import explore_rn
from synclab.families import (
    Variant,
    build,
    build_cerny,
    build_dm,
    build_dm_digraph,
    build_wielandt,
    dm_params,
    dm_reset_target,
    verify_family,
    wielandt_params,
)
from synclab.quotient import is_isomorphic, quotient_threshold_check, sigma_factor
from synclab.solver import frobenius, cycle_image_automaton, cycle_image, random_synchronizing, reset_threshold

RESULTS = []

LAMBDA_MAX_Q, LAMBDA_MAX_STATES = 10, 18


def record(number, ok, detail, elapsed, budget):
    in_time = elapsed <= budget
    line = (f"criterion {number:>2}: {'PASS' if ok and in_time else 'FAIL'}  {detail}  "
            f"[{elapsed:.1f}s / {budget}s]")
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def coprime_pairs(max_q, min_p=2):
    return [(p, q) for q in range(3, max_q + 1) for p in range(min_p, q) if gcd(p, q) == 1]


def lambda_params(variant):
    return list(dm_params(variant, LAMBDA_MAX_Q, LAMBDA_MAX_Q, min_lambda=1, max_states=LAMBDA_MAX_STATES))


def test_criterion_01_wielandt_sweep():
    t0 = time.perf_counter()
    reports = verify_family(wielandt_params(12))
    bad = [r.params.label() for r in reports if not r.match]
    expected_pairs = {(p, q) for p, q in coprime_pairs(12)}
    covered = {(r.params.p, r.params.q) for r in reports}
    ok = not bad and covered == expected_pairs
    record(1, ok, f"W(n,q,p) q<=12: {len(reports)} instances, {len(bad)} mismatches", time.perf_counter() - t0, 300)


@pytest.mark.parametrize("number, variant", [(2, Variant.DM_AB), (3, Variant.DM_AA)])
def test_criteria_02_03_dm_sweeps(number, variant):
    t0 = time.perf_counter()
    reports = verify_family(dm_params(variant, 12))
    bad = [r.params.label() for r in reports if not (r.match and r.witness_ok and r.witness_len == r.formula_value)]
    record(number, bool(reports) and not bad,
           f"D^{variant.value[-2:]}(q,p,k) q<=12: {len(reports)} instances, {len(bad)} mismatches",
           time.perf_counter() - t0, 120)


def test_criterion_04_lambda_sweep():
    t0 = time.perf_counter()
    checked = rejected = 0
    bad = []
    for variant in (Variant.DM_AA, Variant.DM_AB):
        accepted = lambda_params(variant)
        everything = list(dm_params(variant, LAMBDA_MAX_Q, LAMBDA_MAX_Q, min_lambda=1,
                                    max_states=LAMBDA_MAX_STATES, validated=False))
        rejected += len(everything) - len(accepted)
        for r in verify_family(accepted):
            checked += 1
            if not r.match:
                bad.append(r.params.label())
    record(4, checked > 0 and not bad,
           f"D_lambda q<=10, states<=18: {checked} instances, {len(bad)} mismatches, "
           f"{rejected} tuples with k+lambda>=p rejected by construction",
           time.perf_counter() - t0, 300)


def test_criterion_05_targets():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for variant in (Variant.DM_AA, Variant.DM_AB):
        for params in dm_params(variant, 12):
            q, p, k = params.q, params.p, params.k
            expected = (q - p + 1 + k) % q if (variant is Variant.DM_AA and k == q - p) else q - p + 1
            assert expected == dm_reset_target(variant, q, p, k)
            checked += 1
            if tuple(reset_threshold(build(params)).targets) != (expected,):
                bad.append(params.label())
    record(5, checked > 0 and not bad, f"synchronization targets: {checked} instances, {len(bad)} mismatches",
           time.perf_counter() - t0, 120)


def test_criterion_06_cycle_image():
    t0 = time.perf_counter()
    bad = []
    pairs = coprime_pairs(12)
    for p, q in pairs:
        image = set(cycle_image(p, q, cycle_image_automaton(p, q), StateSet.of(q, range(p)), 0))
        if image != {0, p - q % p}:
            bad.append((p, q, sorted(image)))
    record(6, not bad, f"cycle image {{0, p-r}}: {len(pairs)} pairs, {len(bad)} mismatches",
           time.perf_counter() - t0, 60)


def test_criterion_07_quotients():
    t0 = time.perf_counter()
    bad = []
    w_count = d_count = 0
    for params in wielandt_params(12):
        if params.n == params.q:
            continue
        w_count += 1
        dfa = build(params)
        quotient, _ = sigma_factor(dfa)
        smaller = build_wielandt(params.n - 1, params.q, params.p)
        diff = reset_threshold(dfa).threshold - reset_threshold(quotient).threshold
        if not is_isomorphic(quotient, smaller) or diff != 1:
            bad.append(params.label())
    for variant in (Variant.DM_AA, Variant.DM_AB):
        for params in lambda_params(variant):
            d_count += 1
            dfa = build(params)
            quotient, _ = sigma_factor(dfa)
            smaller = build_dm(variant, params.q, params.p, params.k, params.lam - 1)
            diff = reset_threshold(dfa).threshold - reset_threshold(quotient).threshold
            if not is_isomorphic(quotient, smaller) or diff != 1:
                bad.append(params.label())
    rng = random.Random(20240601)
    random_bad = sum(not quotient_threshold_check(random_synchronizing(8, 2, rng)).ok for _ in range(1000))
    record(7, not bad and not random_bad,
           f"factor chains: {w_count} W + {d_count} D_lambda, {len(bad)} failures; "
           f"1000 random 8-state, {random_bad} violations",
           time.perf_counter() - t0, 180)


def test_criterion_08_frobenius():
    t0 = time.perf_counter()
    bad = []
    pairs = coprime_pairs(30, min_p=1)
    for p, q in pairs:
        bound = (p - 1) * (q - 1)
        reachable = [False] * (bound + 1)
        reachable[0] = True
        for m in range(1, bound + 1):
            reachable[m] = (m >= p and reachable[m - p]) or (m >= q and reachable[m - q])
        gaps = [m for m, r in enumerate(reachable) if not r]
        if frobenius(p, q) != (gaps[-1] if gaps else -1):
            bad.append((p, q))
    record(8, not bad, f"Frobenius numbers: {len(pairs)} pairs, {len(bad)} mismatches", time.perf_counter() - t0, 1)


def test_criterion_09_cerny():
    t0 = time.perf_counter()
    values = {n: reset_threshold(build_cerny(n)).threshold for n in range(2, 11)}
    bad = [n for n, v in values.items() if v != (n - 1) ** 2]
    record(9, not bad, f"Cerny n=2..10 thresholds {list(values.values())}", time.perf_counter() - t0, 60)


def test_criterion_10_colorings():
    t0 = time.perf_counter()
    summary = {}
    for qpk in [(5, 3, 1), (5, 3, 2), (7, 4, 2), (7, 5, 1)]:
        found = enumerate_colorings(build_dm_digraph(*qpk, 0))
        summary[qpk] = (len(found), all(c.synchronizing for c in found))
    ok = all(v == (2, True) for v in summary.values())
    record(10, ok, "coloring counts " + ", ".join(f"D{k}: {v[0]}" for k, v in summary.items()),
           time.perf_counter() - t0, 60)


def test_criterion_11_exponent_gap():
    t0 = time.perf_counter()
    instances = list(wielandt_params(8))
    for variant in (Variant.DM_AA, Variant.DM_AB):
        instances += list(dm_params(variant, 8, 8, max_states=LAMBDA_MAX_STATES))
    bad = [params.label() for params in instances if not exponent_rt_gap_check(build(params)).ok]
    record(11, not bad, f"rt > exponent - n: {len(instances)} instances, {len(bad)} violations",
           time.perf_counter() - t0, 120)


def test_criterion_12_rn_census():
    t0 = time.perf_counter()
    maxima = {n: max(explore_rn(n).thresholds) for n in range(2, 6)}
    ok = all(m == (n - 1) ** 2 for n, m in maxima.items())
    record(12, ok, f"exhaustive R_n maxima {maxima} (n=6..10 declared out of reach)",
           time.perf_counter() - t0, 300)


if __name__ == "__main__":
    tests = [(name, obj) for name, obj in sorted(globals().items()) if name.startswith("test_")]
    failed = 0
    for name, func in tests:
        args = [(2, Variant.DM_AB), (3, Variant.DM_AA)] if "02_03" in name else [()]
        for a in args:
            try:
                func(*a)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
