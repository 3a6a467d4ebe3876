"""Command-line front end.

Exit codes: 0 computed, 1 bad input, 2 not synchronizing, 3 resource cap,
4 a verification sweep found a mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import automaton as am
from . import families as fam
from .digraphs import enumerate_colorings, exponent, is_primitive
from .errors import DomainError, NotSynchronizingError, ParseError, ResourceError, SyncLabError
from .explore import MAX_EXPLORE_STATES, explore_rn
from .quotient import sigma_factor
from .solver import DEFAULT_CAP, check_reset_word, frobenius, random_synchronizing, representable, reset_threshold

EXIT_OK, EXIT_INPUT, EXIT_NOT_SYNC, EXIT_RESOURCE, EXIT_MISMATCH = 0, 1, 2, 3, 4

CSV_COLUMNS = ["family", "variant", "q", "p", "n", "k", "lambda", "formula", "solver", "witness_len", "targets", "match"]

FAMILIES = ["wielandt", "dm-aa", "dm-ab", "cerny"]


@dataclass(frozen=True)
class SweepSpec:
    family: str
    max_q: int
    max_lambda: int = 0
    output_path: str | None = None
    format: str = "csv"
    include_rejected: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.max_q < 3 and self.family != "cerny":
            raise DomainError("max_q must be at least 3")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")


# ---------------------------------------------------------------- helpers

def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc), path) from exc


def _load_dfa(path):
    return am.parse(_read(path))


def _load_digraph(path):
    """Digraph JSON, or automaton JSON (its underlying digraph)."""
    data = json.loads(_read(path))
    if isinstance(data, dict) and "delta" in data:
        return am.underlying_digraph(am.dfa_from_dict(data))
    return am.digraph_from_dict(data)


def _dumps(obj) -> str:
    return json.dumps(obj)


# ---------------------------------------------------------------- commands

def cmd_build(args) -> int:
    family = args.family
    if family == "cerny":
        if args.n is None:
            raise DomainError("--n is required for cerny")
        dfa = fam.build_cerny(args.n)
    elif family == "random":
        if args.n is None:
            raise DomainError("--n is required for random")
        dfa = random_synchronizing(args.n, 2, random.Random(args.seed))
    elif family == "wielandt":
        if None in (args.q, args.p, args.n):
            raise DomainError("--q, --p and --n are required for wielandt")
        dfa = fam.build_wielandt(args.n, args.q, args.p)
    else:
        if None in (args.q, args.p, args.k):
            raise DomainError("--q, --p and --k are required for dm families")
        dfa = fam.build_dm(family, args.q, args.p, args.k, args.lam)
    _emit(args, am.serialize(dfa))
    return EXIT_OK


def cmd_rt(args) -> int:
    dfa = _load_dfa(args.input)
    res = reset_threshold(dfa, args.cap)
    _emit(args, json.dumps(res.to_dict()))
    return EXIT_OK


def cmd_check_word(args) -> int:
    dfa = _load_dfa(args.input)
    word = am.parse_word(args.word, dfa.alphabet_size)
    state = check_reset_word(dfa, word)
    image = am.apply(dfa, dfa.full_set(), word)
    _emit(args, json.dumps({
        "word": am.format_word(word),
        "length": len(word),
        "resets": state is not None,
        "state": state,
        "image": list(image),
    }))
    return EXIT_OK


def sweep_params(spec: SweepSpec, validated=True):
    if spec.family == "wielandt":
        return list(fam.wielandt_params(spec.max_q))
    return list(fam.dm_params(spec.family, spec.max_q, spec.max_lambda, validated=validated))


def _row(params, report=None, status=None):
    dm = params.variant is not fam.Variant.W
    row = {
        "family": "dm" if dm else "wielandt",
        "variant": params.variant.value[-2:] if dm else "W",
        "q": params.q,
        "p": params.p,
        "n": params.num_states,
        "k": params.k if dm else "",
        "lambda": params.lam if dm else "",
    }
    if report is None:
        row.update(formula="", solver="", witness_len="", targets="", match=status)
    else:
        ok = report.match and report.witness_ok is not False
        row.update(
            formula=report.formula_value,
            solver=report.solver_value,
            witness_len="" if report.witness_len is None else report.witness_len,
            targets=" ".join(map(str, report.targets)),
            match="true" if ok else "false",
        )
    return row


def run_sweep(spec: SweepSpec, cap: int = DEFAULT_CAP) -> tuple:
    """Rows of the sweep and whether every counted row matched."""
    rows, all_ok = [], True
    if spec.family == "cerny":
        for n in range(2, spec.max_q + 1):
            res = reset_threshold(fam.build_cerny(n), cap)
            ok = res.threshold == (n - 1) ** 2
            all_ok &= ok
            rows.append({"family": "cerny", "variant": "", "q": "", "p": "", "n": n, "k": "", "lambda": "",
                         "formula": (n - 1) ** 2, "solver": res.threshold, "witness_len": "",
                         "targets": " ".join(map(str, res.targets)), "match": "true" if ok else "false"})
        return rows, all_ok
    accepted = sweep_params(spec)
    considered = sweep_params(spec, validated=False) if spec.include_rejected else accepted
    accepted_set = set(accepted)
    for params in considered:
        if params not in accepted_set:
            rows.append(_row(params, status="rejected"))
            continue
        try:
            report = fam.verify_one(params, cap)
        except SyncLabError as exc:
            all_ok = False
            rows.append(_row(params, status="error"))
            print(f"{params.label()}: {exc}", file=sys.stderr)
            continue
        row = _row(params, report)
        all_ok &= row["match"] == "true"
        rows.append(row)
    return rows, all_ok


def cmd_verify(args) -> int:
    spec = SweepSpec(args.family, args.max_q, args.max_lambda, args.output, args.format, args.include_rejected)
    rows, all_ok = run_sweep(spec, args.cap)
    if spec.format == "json":
        text = _dumps(rows)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    _emit(args, text)
    return EXIT_OK if all_ok else EXIT_MISMATCH


def cmd_quotient(args) -> int:
    dfa = _load_dfa(args.input)
    quotient, part = sigma_factor(dfa)
    _emit(args, _dumps({"automaton": am.dfa_to_dict(quotient), "partition": part.to_json()}))
    return EXIT_OK


def cmd_exponent(args) -> int:
    g = _load_digraph(args.input)
    if not is_primitive(g):
        _emit(args, json.dumps({"primitive": False, "exponent": None}))
        return EXIT_INPUT
    _emit(args, json.dumps({"primitive": True, "exponent": exponent(g)}))
    return EXIT_OK


def cmd_colorings(args) -> int:
    g = _load_digraph(args.input)
    found = enumerate_colorings(g)
    if args.sync_only:
        found = [c for c in found if c.synchronizing]
    _emit(args, _dumps([{"automaton": am.dfa_to_dict(c.dfa), "synchronizing": c.synchronizing} for c in found]))
    return EXIT_OK


def cmd_explore_rn(args) -> int:
    if args.n > MAX_EXPLORE_STATES:
        raise ResourceError(f"explore-rn refuses n > {MAX_EXPLORE_STATES}")
    census = explore_rn(args.n)
    data = census.to_dict()
    data["max"] = max(census.thresholds)
    data["cerny_bound"] = (args.n - 1) ** 2
    _emit(args, _dumps(data))
    return EXIT_OK


def cmd_frobenius(args) -> int:
    f = frobenius(args.p, args.q)
    gaps = [m for m in range(max(f, 0) + 1) if not representable(m, args.p, args.q)]
    _emit(args, json.dumps({"p": args.p, "q": args.q, "frobenius": f, "non_representable": gaps}))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _global_flags(parser, suppress=False):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--cap", type=int, default=default(DEFAULT_CAP), help="solver state cap")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for random automata")
    parser.add_argument("--output", "-o", default=default(None), help="write result to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="synclab", description="Synchronizing automata workbench")
    _global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("build", cmd_build, "emit a family automaton as JSON")
    p.add_argument("--family", required=True, choices=FAMILIES + ["random"])
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--lambda", dest="lam", type=int, default=0)

    p = add("rt", cmd_rt, "exact reset threshold with witness and targets")
    p.add_argument("--input", "-i", required=True)

    p = add("check-word", cmd_check_word, "test whether a word resets an automaton")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--word", "-w", required=True, help="e.g. 'a^2(ba^4)ba^2'")

    p = add("verify", cmd_verify, "sweep a family against its reset-threshold formula")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--max-q", type=int, required=True)
    p.add_argument("--max-lambda", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--include-rejected", action="store_true",
                   help="list tuples rejected by construction validation")

    p = add("quotient", cmd_quotient, "sigma-factor automaton and its partition")
    p.add_argument("--input", "-i", required=True)

    p = add("exponent", cmd_exponent, "exponent of a primitive digraph")
    p.add_argument("--input", "-i", required=True)

    p = add("colorings", cmd_colorings, "colorings of a digraph up to isomorphism")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--sync-only", action="store_true")

    p = add("explore-rn", cmd_explore_rn, "reset thresholds of all binary n-state automata")
    p.add_argument("--n", type=int, required=True)

    p = add("frobenius", cmd_frobenius, "largest non-representable integer")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSynchronizingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SYNC
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SyncLabError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
