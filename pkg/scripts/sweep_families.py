"""Compare solver thresholds with the closed formulas over a family sweep.

    python scripts/sweep_families.py --family dm-ab --max-q 12
    python scripts/sweep_families.py --family dm-aa --max-q 10 --max-lambda 9 --max-states 18 --csv out.csv
"""
import argparse
import csv
import time
from dataclasses import asdict, dataclass

from synclab.families import dm_params, verify_family, wielandt_params


@dataclass
class SweepConfig:
    family: str = "wielandt"
    max_q: int = 10
    max_lambda: int = 0
    max_states: int | None = None
    csv_path: str | None = None


def run(cfg: SweepConfig):
    if cfg.family == "wielandt":
        params = list(wielandt_params(cfg.max_q))
    else:
        params = list(dm_params(cfg.family, cfg.max_q, cfg.max_lambda, max_states=cfg.max_states))
    t0 = time.perf_counter()
    reports = verify_family(params)
    elapsed = time.perf_counter() - t0
    rows = [dict(label=r.params.label(), states=r.params.num_states, formula=r.formula_value,
                 solver=r.solver_value, witness_ok=r.witness_ok, targets=" ".join(map(str, r.targets)))
            for r in reports]
    return rows, elapsed


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--family", choices=["wielandt", "dm-aa", "dm-ab"], default="wielandt")
    ap.add_argument("--max-q", type=int, default=10)
    ap.add_argument("--max-lambda", type=int, default=0)
    ap.add_argument("--max-states", type=int)
    ap.add_argument("--csv", dest="csv_path")
    cfg = SweepConfig(**vars(ap.parse_args()))
    rows, elapsed = run(cfg)
    mismatches = [r for r in rows if r["formula"] != r["solver"] or r["witness_ok"] is False]
    for r in rows:
        flag = "" if r not in mismatches else "  <-- mismatch"
        print(f"{r['label']:<22} n={r['states']:<3} formula={r['formula']:<4} solver={r['solver']:<4}"
              f" targets={r['targets']}{flag}")
    print(f"\n{asdict(cfg)}: {len(rows)} instances, {len(mismatches)} mismatches, {elapsed:.2f}s")
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else ["label"])
            writer.writeheader()
            writer.writerows(rows)


if __name__ == "__main__":
    main()
