"""Exhaustive census of reset thresholds for binary automata with n <= 5 states.

    python scripts/census_rn.py --max-n 5
"""
import argparse
import time
from dataclasses import dataclass

from synclab.explore import MAX_EXPLORE_STATES, explore_rn


@dataclass
class CensusConfig:
    min_n: int = 2
    max_n: int = 4


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=4, choices=range(1, MAX_EXPLORE_STATES + 1))
    cfg = CensusConfig(**vars(ap.parse_args()))
    for n in range(cfg.min_n, cfg.max_n + 1):
        t0 = time.perf_counter()
        census = explore_rn(n)
        ts = census.thresholds
        missing = sorted(set(range(1, max(ts) + 1)) - set(ts))
        print(f"n={n}: max={max(ts)} (bound {(n - 1) ** 2}), gaps={missing or 'none'}, "
              f"non-synchronizing {census.non_synchronizing}/{census.total}  [{time.perf_counter() - t0:.1f}s]")
        top = ", ".join(f"{t}:{census.counts[t]}" for t in ts[-4:])
        print(f"      counts of the four largest thresholds: {top}")


if __name__ == "__main__":
    main()
