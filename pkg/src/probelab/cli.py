"""Command line entry points.

Subcommands: experiment, train, sample, gen-hardness, export-ilp, verify.
Exit codes: 0 success, 1 usage error, 2 data error, 3 invariant violation.
"""

import argparse
import sys

from .graph import EdgeListError, ProbeError
from .learning import TrainingError
from .planner import ExactLimitError


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; we reserve 2 for data problems
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _split_csv(text):
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser():
    parser = _Parser(prog="probelab",
                     description="adaptive probing of incomplete networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("experiment", help="run strategies over sampled views")
    p.add_argument("--dataset", required=True, help="edge list file")
    p.add_argument("--strategies", required=True,
                   help="comma separated strategy names")
    p.add_argument("--budgets", default="1,100,200,300",
                   help="comma separated probe budgets")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--frac", type=float, default=0.05,
                   help="sample size as a fraction of the graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=0,
                   help="parallel sample workers (0: PROBE_LAB_THREADS)")
    p.add_argument("--model", action="append", default=[],
                   metavar="NAME=PATH",
                   help="model file for a learned strategy (repeatable)")
    p.add_argument("--timings", action="store_true",
                   help="include per-run wall time in the CSV "
                        "(breaks byte-for-byte determinism)")
    p.add_argument("--out", default=None, help="CSV output path")

    p = sub.add_parser("train", help="fit a probing model on a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--kind", choices=("linear", "logistic"), required=True)
    p.add_argument("--horizon", type=int, default=2,
                   help="lookahead horizon for training labels")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--min-frac", type=float, default=0.005)
    p.add_argument("--max-frac", type=float, default=0.10)
    p.add_argument("--gamma", type=float, default=-0.25,
                   help="exponent of the sample size distribution")
    p.add_argument("--pair-cap", type=int, default=None,
                   help="max training pairs drawn per sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="model JSON output path")

    p = sub.add_parser("sample", help="write sampled view descriptors")
    p.add_argument("--dataset", required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--frac", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("gen-hardness",
                       help="generate an adversarial probing instance")
    p.add_argument("--n", type=int, required=True,
                   help="number of frontier (gray) nodes")
    p.add_argument("--m", type=int, required=True,
                   help="hidden nodes behind the rewarding frontier node")
    p.add_argument("--g-star", type=int, default=0,
                   help="index of the rewarding frontier node")
    p.add_argument("--layers", type=int, choices=(1, 2), default=1)
    p.add_argument("--out", required=True,
                   help="output prefix (.edges and .seeds are written)")

    p = sub.add_parser("export-ilp",
                       help="write the probing ILP in LP text format")
    p.add_argument("--dataset", required=True)
    p.add_argument("--seeds", required=True,
                   help="file listing initially probed nodes")
    p.add_argument("--k", type=int, required=True, help="probe budget")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="self-check invariants against oracles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=25)
    return parser


def _parse_models(pairs):
    out = {}
    for item in pairs:
        name, sep, path = item.partition("=")
        if not sep or not name or not path:
            raise ValueError(f"bad --model value {item!r}, want NAME=PATH")
        out[name.upper()] = path
    return out


def _run(args):
    from . import harness

    if args.command == "experiment":
        try:
            config = harness.ExperimentConfig(
                dataset=args.dataset,
                strategies=_split_csv(args.strategies),
                budgets=tuple(int(b) for b in _split_csv(args.budgets)),
                samples=args.samples, frac=args.frac, seed=args.seed,
                workers=args.workers, model_paths=_parse_models(args.model),
                timings=args.timings)
        except (ValueError, KeyError) as exc:
            msg = exc.args[0] if exc.args else str(exc)
            print(f"probelab experiment: error: {msg}", file=sys.stderr)
            return 1
        rows, summary, _ = harness.cmd_experiment(config, out_csv=args.out)
        if args.out:
            print(f"wrote {len(rows)} rows to {args.out}")
        else:
            sys.stdout.write(harness.csv_text(rows, timings=args.timings))
        print(summary)
        return 0

    if args.command == "train":
        from .sampling import SampleConfig
        cfg = SampleConfig(min_frac=args.min_frac, max_frac=args.max_frac,
                           gamma=args.gamma, sample_count=args.samples,
                           seed=args.seed)
        _, info = harness.cmd_train(
            args.dataset, args.kind, args.horizon, sample_config=cfg,
            out=args.out, pair_cap=args.pair_cap, seed=args.seed)
        for key, value in info.items():
            print(f"{key}: {value}")
        return 0

    if args.command == "sample":
        paths = harness.cmd_sample(args.dataset, args.samples, args.frac,
                                   args.seed, args.out_dir)
        print(f"wrote {len(paths)} sample descriptors to {args.out_dir}")
        return 0

    if args.command == "gen-hardness":
        inst, edge_path, seed_path = harness.cmd_gen_hardness(
            args.n, args.m, args.g_star, args.layers, args.out)
        print(f"wrote {edge_path} and {seed_path} "
              f"({inst.graph.n} nodes, {inst.graph.edge_count} edges)")
        return 0

    if args.command == "export-ilp":
        problem = harness.cmd_export_ilp(args.dataset, args.seeds, args.k,
                                         args.out)
        print(f"wrote {args.out} ({len(problem.variables())} variables, "
              f"{len(problem.constraints)} constraints)")
        return 0

    if args.command == "verify":
        checks = harness.run_verify(seed=args.seed, rounds=args.rounds)
        failed = 0
        for name, ok, detail in checks:
            line = f"[{'ok' if ok else 'FAIL'}] {name}"
            if detail:
                line += f": {detail}"
            print(line)
            failed += not ok
        if failed:
            print(f"{failed} of {len(checks)} checks failed",
                  file=sys.stderr)
            return 3
        print(f"all {len(checks)} checks passed")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (EdgeListError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"probelab: data error: {exc}", file=sys.stderr)
        return 2
    except (TrainingError, ValueError, ExactLimitError) as exc:
        print(f"probelab: error: {exc}", file=sys.stderr)
        return 2
    except ProbeError as exc:
        print(f"probelab: invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
