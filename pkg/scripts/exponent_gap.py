"""Tabulate exponent of the underlying digraph against reset threshold.

    python scripts/exponent_gap.py --max-q 8
"""
import argparse
from dataclasses import dataclass

from synclab.digraphs import exponent_rt_gap_check
from synclab.families import build, build_cerny, dm_params, wielandt_params


@dataclass
class GapConfig:
    max_q: int = 8
    max_lambda: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-q", type=int, default=8)
    ap.add_argument("--max-lambda", type=int, default=0)
    cfg = GapConfig(**vars(ap.parse_args()))
    instances = [(p.label(), build(p)) for p in wielandt_params(cfg.max_q)]
    for variant in ("dm-aa", "dm-ab"):
        instances += [(p.label(), build(p)) for p in dm_params(variant, cfg.max_q, cfg.max_lambda)]
    instances += [(f"Cerny({n})", build_cerny(n)) for n in range(3, cfg.max_q + 1)]
    print(f"{'automaton':<22}{'n':>4}{'exp':>6}{'rt':>6}{'rt-(exp-n)':>12}")
    worst = None
    for label, dfa in instances:
        check = exponent_rt_gap_check(dfa)
        slack = check.threshold - (check.exponent - dfa.num_states)
        worst = slack if worst is None else min(worst, slack)
        print(f"{label:<22}{dfa.num_states:>4}{check.exponent:>6}{check.threshold:>6}{slack:>12}")
    print(f"\nsmallest slack: {worst} (positive means rt > exp - n held everywhere)")


if __name__ == "__main__":
    main()
