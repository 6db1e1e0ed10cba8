"""Command-line front end.

Exit codes: 0 success/verified/vacuous, 1 theorem-violation counterexample,
2 usage or capacity error.  Machine output (--json/--csv) goes to stdout;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .groups import CapacityError, Group, parse_element, parse_group
from .setcalc import (
    GroupSet,
    SequenceMS,
    stabilizer,
    subsequence_sums,
    subset_sums,
)
from .bounds import (
    corollary_bound,
    kneser_bound,
    main_bound_check,
    recursive_bound_numerator,
    sequence_bound_check,
)
from .construct import best_half_subset, greedy_grow
from . import verify as vf


def parse_set(group: Group, literal: str) -> GroupSet:
    literal = literal.strip()
    if not literal:
        return GroupSet(group)
    return GroupSet.from_indices(
        group, (parse_element(group, part).index for part in literal.split(";"))
    )


def parse_sequence(group: Group, literal: str) -> SequenceMS:
    """Sequence literal `elem:mult;elem:mult` with `:1` default."""
    literal = literal.strip()
    seq = SequenceMS(group)
    if not literal:
        return seq
    for part in literal.split(";"):
        if ":" in part:
            elem, mult = part.rsplit(":", 1)
            m = int(mult)
        else:
            elem, m = part, 1
        if m < 1:
            raise ValueError(f"bad multiplicity in {part!r}")
        seq.mult[parse_element(group, elem).index] += m
    return seq


def _emit(args, payload: dict, human_lines) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in human_lines:
            print(line)


def _cmd_sigma(args) -> int:
    group = parse_group(args.group)
    if args.seq is not None:
        a = parse_sequence(group, args.seq)
        sigma = subsequence_sums(a)
    else:
        A = parse_set(group, args.set)
        sigma = subset_sums(A)
    H = stabilizer(sigma)
    payload = {
        "group": group.spec(),
        "sigma": sigma.literal(),
        "sigma_size": sigma.card,
        "stabilizer": ";".join(group.element_literal(m) for m in H.members),
        "stabilizer_size": len(H),
    }
    _emit(
        args,
        payload,
        [
            f"Sigma = {{{payload['sigma']}}}",
            f"|Sigma| = {payload['sigma_size']}",
            f"stab(Sigma) = {{{payload['stabilizer']}}}",
        ],
    )
    return 0


def _cmd_bound(args) -> int:
    if args.which == "recursive":
        if args.u is None:
            raise ValueError("recursive bound needs --u")
        value = recursive_bound_numerator(args.u)
        _emit(
            args,
            {"name": "recursive", "u": args.u, "numerator": value},
            [f"N({args.u}) = {value}  (bound: N/16 = {value}/16)"],
        )
        return 0
    group = parse_group(args.group)
    if args.which == "kneser":
        if not args.set:
            raise ValueError("kneser bound needs one or more --set")
        rep = kneser_bound([parse_set(group, s) for s in args.set])
    elif args.which == "sequence":
        if args.seq is None:
            raise ValueError("sequence bound needs --seq")
        rep = sequence_bound_check(parse_sequence(group, args.seq))
    else:
        A = parse_set(group, args.set[0] if args.set else "")
        rep = main_bound_check(A) if args.which == "main" else corollary_bound(A)
    if getattr(args, "csv", False):
        print(rep.csv_row())
    else:
        _emit(
            args,
            rep.to_dict(),
            [
                f"{rep.name}: lhs = {rep.lhs}, rhs = {rep.rhs}, "
                f"holds = {rep.holds}",
                f"context: {rep.context}",
            ],
        )
    return 0 if rep.holds else 1


def _cmd_verify(args) -> int:
    workers = args.workers
    if args.theorem in ("main", "corollary", "kneser-pairs"):
        group = parse_group(args.group)
        run = vf.exhaustive_theorem(group, args.theorem, workers=workers)
    elif args.theorem == "kneser":
        if args.seed is None:
            raise ValueError("randomized verify requires --seed")
        groups = [parse_group(s) for s in args.group.split(";")]
        run = vf.random_kneser(
            groups, args.m_max, args.trials, args.seed, workers=workers
        )
    elif args.theorem == "sequence":
        if args.seed is None:
            raise ValueError("randomized verify requires --seed")
        group = parse_group(args.group)
        run = vf.random_sequence_theorem(
            group, args.n_max, args.trials, args.seed, workers=workers
        )
    elif args.theorem == "olson":
        if args.p is None:
            raise ValueError("olson verify needs --p")
        run = vf.olson_check(args.p, workers=workers)
    elif args.theorem == "vu":
        if args.n is None:
            raise ValueError("vu verify needs --n")
        run = vf.vu_check(
            args.n, sample=args.sample, seed=args.seed, workers=workers
        )
    elif args.theorem == "interval":
        if args.n is None:
            raise ValueError("interval example needs --n")
        record = vf.interval_example(args.n)
        _emit(
            args,
            record,
            [
                f"n = {record['n']}, embedded in Z{record['m']}",
                f"|Sigma| = {record['sigma_size']} "
                f"(derived formula {record['derived_formula_size']}, "
                f"paper-printed value {record['paper_printed_size']})",
                f"|stab| = {record['stabilizer_size']}",
            ],
        )
        return 0
    else:
        raise ValueError(f"unknown theorem {args.theorem!r}")

    if args.json:
        print(run.to_json())
    else:
        print(f"{run.theorem} on {run.group} [{run.mode}]: {run.verdict}")
        print(f"stats: {run.stats}")
        if run.millis is not None:
            print(f"elapsed: {run.millis:.1f} ms", file=sys.stderr)
        for ce in run.counterexamples[:10]:
            print(f"counterexample: {ce}")
    return 0 if run.verdict in ("verified", "vacuous") else 1


def _cmd_search(args) -> int:
    group = parse_group(args.group)
    mode = "hillclimb" if args.hillclimb else "exhaustive"
    record = vf.extremal_search(
        group, args.k, mode=mode, seed=args.seed, restarts=args.restarts
    )
    if args.json:
        print(record.to_json())
    else:
        if record.feasible:
            print(
                f"min |Sigma(A)| = {record.sigma_size} at A = {{{record.best_set}}}"
            )
            print(f"4*(|Sigma|-|H|) = {record.ratio_num} vs "
                  f"|A\\H|^2 = {record.ratio_den}")
        else:
            print("no k-subset with trivial stabilizer exists")
    return 0


def _cmd_construct(args) -> int:
    group = parse_group(args.group)
    A = parse_set(group, args.set)
    if args.exact:
        B, size = best_half_subset(A)
        payload = {"mode": "exact", "subset": B.literal(), "sigma_size": size}
        _emit(args, payload, [f"best subset = {{{B.literal()}}}, |Sigma| = {size}"])
    else:
        trace = greedy_grow(A, args.u)
        payload = {
            "mode": "greedy",
            "trace": [
                {"element": s.element, "delta": s.delta, "sigma_size": s.sigma_size}
                for s in trace.steps
            ],
            "subset": trace.final_set.literal(),
        }
        _emit(
            args,
            payload,
            [f"greedy subset = {{{trace.final_set.literal()}}}"]
            + [
                f"  step: +{group.element_literal(s.element)} "
                f"(delta {s.delta}) -> |Sigma| = {s.sigma_size}"
                for s in trace.steps
            ],
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigmaforge",
        description="Exact subset-sum toolkit for finite abelian groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="compute Sigma, |Sigma|, stab(Sigma)")
    p.add_argument("--group", required=True)
    p.add_argument("--set", default="")
    p.add_argument("--seq")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sigma)

    p = sub.add_parser("bound", help="evaluate one inequality on an instance")
    p.add_argument(
        "--which",
        required=True,
        choices=["kneser", "corollary", "main", "sequence", "recursive"],
    )
    p.add_argument("--group")
    p.add_argument("--set", action="append")
    p.add_argument("--seq")
    p.add_argument("--u", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("verify", help="run a verification harness")
    p.add_argument(
        "theorem",
        choices=[
            "main",
            "corollary",
            "kneser-pairs",
            "kneser",
            "sequence",
            "olson",
            "vu",
            "interval",
        ],
    )
    p.add_argument("--group")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="search for extremal low-|Sigma| sets")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--hillclimb", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("construct", help="greedy or exact subset growth")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--u", type=int, default=0)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--exact", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_construct)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
