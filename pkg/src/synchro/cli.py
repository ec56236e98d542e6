"""Command line front end: analyze, batch, packing, generate, verify."""

import argparse
import json
import sys

from .algebra import Tolerances
from .automaton import cerny, format_aut, parse_aut
from .census import ExperimentConfig
from .errors import BudgetExceeded, SynchroError
from .packing import PackingInstance, exact_packing, greedy_packing, upper_bounds
from .report import AnalyzeConfig, analyze, batch
from .verify import verify_suite


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="synchro",
        description="Algebraic analysis of synchronizing automata",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one automaton from a .aut file")
    p.add_argument("file", help="path to a .aut file, or - for stdin")
    p.add_argument("--tol", type=float, default=1e-8,
                   help="zero/rank tolerance for the numerical split")
    p.add_argument("--tol-cluster", type=float, default=1e-6,
                   help="eigenvalue clustering tolerance")
    p.add_argument("--monoid-cap", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit the full JSON report")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")

    p = sub.add_parser("batch", help="run a census or sampling experiment")
    p.add_argument("--n", required=True, help="state range, e.g. 3..4 or 3")
    p.add_argument("--letters", type=int, default=2)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=0, help="samples per state count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--monoid-cap", type=int, default=200_000)
    p.add_argument("--no-reduce", action="store_true",
                   help="keep all tables instead of one per isomorphism class")

    p = sub.add_parser("packing", help="packing number bounds and exact search")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.add_argument("--witness", action="store_true", help="print a witness design")
    p.add_argument("--seed", type=int, default=0, help="seed for the greedy design")

    p = sub.add_parser("generate", help="emit a named automaton as .aut text")
    p.add_argument("family", choices=("cerny",))
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")

    return parser


def _cmd_analyze(args):
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file) as fh:
            text = fh.read()
    a = parse_aut(text)
    cfg = AnalyzeConfig(
        monoid_cap=args.monoid_cap,
        tol=Tolerances(cluster=args.tol_cluster, rank=args.tol, zero=args.tol),
        seed=args.seed,
    )
    rep = analyze(a, cfg)
    if args.json:
        print(json.dumps(rep.to_dict(with_timings=args.timings), sort_keys=True, indent=1))
        return 0
    print(f"automaton {rep.digest}  n={rep.n} m={rep.m}")
    print(f"  synchronizing: {rep.synchronizing}")
    if rep.reset_len is not None:
        print(f"  shortest reset length: {rep.reset_len}")
    if rep.former_rank is not None:
        print(f"  former rank: {rep.former_rank}")
    if rep.simple is not None:
        print(f"  simple: {rep.simple}")
    if rep.semisimple is not None:
        print(f"  semisimple: {rep.semisimple}")
    if rep.algebra:
        alg = rep.algebra
        print(f"  algebra: dim {alg['dim_R']}, radical dim {alg['dim_rad']}, "
              f"k={alg['k']}, dims={alg['dims']}")
        print(f"  residuals: {alg['residuals']}")
    if rep.ideals:
        ide = rep.ideals
        print(f"  minimal ideal ranks: {ide['rnk']}")
        print(f"  core: {ide['core']}  sections: {ide['sections']}")
        if ide.get("sigma_class_counts") is not None:
            print(f"  sigma class counts: {ide['sigma_class_counts']}")
        if ide.get("synth_len") is not None:
            print(f"  synthesized reset length: {ide['synth_len']}")
        if ide.get("bound_2r") is not None:
            print(f"  bounds: (n-1)D(2,Fr,n)={ide['bound_2r']}  "
                  f"n(n-1)^2/(Fr(Fr-1))={ide['bound_cubic']:.2f}")
    if rep.skipped:
        print(f"  skipped: {rep.skipped}")
    print(f"  violations: {rep.violations or 'none'}")
    if args.timings:
        print(f"  timings: { {k: round(v, 4) for k, v in rep.timings.items()} }")
    return 0


def _cmd_batch(args):
    text = args.n
    if ".." in text:
        lo, hi = text.split("..", 1)
    else:
        lo = hi = text
    config = ExperimentConfig(
        n_low=int(lo),
        n_high=int(hi),
        letters=args.letters,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        monoid_cap=args.monoid_cap,
        reduce_isomorphs=not args.no_reduce,
    )
    rows, summary, _ = batch(config, out_path=args.out, fmt=args.format)
    print(f"wrote {summary['rows']} rows to {args.out}; violations: {summary['violations']}")
    return 0 if summary["violations"] == 0 else 1


def _cmd_packing(args):
    inst = PackingInstance(args.t, args.r, args.n)
    bounds = upper_bounds(inst)
    greedy = greedy_packing(inst, seed=args.seed)
    print(f"D({inst.t},{inst.r},{inst.n})")
    for name, value in bounds:
        print(f"  upper bound [{name}]: {value}")
    print(f"  greedy lower bound: {len(greedy)}")
    if args.exact:
        try:
            value, design = exact_packing(inst, budget=args.budget)
            print(f"  exact: {value}")
            if args.witness:
                for b in design.blocks:
                    print("   ", " ".join(str(x) for x in b))
        except BudgetExceeded as e:
            print(f"  exact: budget exhausted, interval [{e.lower}, {e.upper}]")
            return 1
    elif args.witness:
        for b in greedy.blocks:
            print("   ", " ".join(str(x) for x in b))
    return 0


def _cmd_generate(args):
    sys.stdout.write(format_aut(cerny(args.n)))
    return 0


def _cmd_verify(args):
    results = verify_suite(level=args.level)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 0 if not failed else 1


def main(argv=None):
    args = _build_parser().parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "batch": _cmd_batch,
        "packing": _cmd_packing,
        "generate": _cmd_generate,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except SynchroError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
