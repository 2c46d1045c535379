"""Command-line interface.

Subcommands: ``build`` (CSV -> binary snapshot), ``analyze`` (features ->
JSON/CSV report), ``generate`` (synthetic models -> CSV/snapshot),
``perturb`` (deletion / noise / biased sampling), ``walk`` (adaptive-walk
batches).  Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .errors import FitgraphError
from .evolution import run_de
from .generators import MODELS, GeneratorConfig, generate
from .io import read_csv, write_landscape_csv
from .landscape import Landscape, build_from_records
from .perturb import add_noise, biased_sample, subsample
from .report import FEATURE_KEYS, AnalyzeOptions, analyze, report_to_json, write_report
from .snapshot import load_snapshot, save_snapshot


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise _UsageError(message)


def _add_input_options(p, with_graph=True):
    p.add_argument("--input", help="variant CSV (sequence,fitness[,variance])")
    if with_graph:
        p.add_argument("--graph", help="binary landscape snapshot")
    p.add_argument(
        "--alphabet",
        default="infer",
        choices=["dna", "rna", "protein", "binary", "infer"],
        help="per-locus alphabet preset, or infer from the data",
    )
    p.add_argument("--delimiter", help="allele separator for multi-character alleles")


def _load(args) -> Landscape:
    if getattr(args, "graph", None):
        return load_snapshot(args.graph)
    if not args.input:
        raise _UsageError("one of --input or --graph is required")
    records = read_csv(args.input, args.delimiter)
    alphabet = None if args.alphabet == "infer" else args.alphabet
    return build_from_records(records, alphabet)


def _write_landscape(landscape, path, delimiter=None):
    if str(path).endswith((".bin", ".snap")):
        save_snapshot(landscape, path)
    else:
        write_landscape_csv(landscape, path, delimiter)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fitgraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a landscape and save a snapshot")
    _add_input_options(p, with_graph=False)
    p.add_argument("--out", required=True, help="snapshot path")

    p = sub.add_parser("analyze", help="compute topographic features")
    _add_input_options(p)
    p.add_argument("--features", default="all", help="comma-separated keys or 'all'")
    p.add_argument("--eps-tol", type=float, help="epistasis tolerance on |epsilon|")
    p.add_argument("--sigma", type=float, help="neutrality threshold on |df|")
    p.add_argument("--walks", type=int, default=1000, help="random walks for rho_a")
    p.add_argument("--walk-length", type=int, help="walk length (default: n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-optima", type=int, default=10000,
                   help="optima cap before accessible basins are sampled")
    p.add_argument("--max-fit-nodes", type=int, default=100000,
                   help="node cap before the pairwise fit subsamples")
    p.add_argument("--threads", type=int, default=0,
                   help="advisory worker count; outputs are identical for any value")
    p.add_argument("--out", help="report path (.json or .csv); stdout when omitted")
    p.add_argument("--format", choices=["json", "csv"], help="override format detection")

    p = sub.add_parser("generate", help="emit a synthetic landscape")
    p.add_argument("--model", required=True, choices=list(MODELS))
    p.add_argument("--n", type=int, required=True, help="number of loci")
    p.add_argument("--m", type=int, default=2, help="alphabet size per locus")
    p.add_argument("--k", type=int, default=0, help="NK interaction order")
    p.add_argument("--nk-neighborhood", default="random", choices=["random", "adjacent"])
    p.add_argument("--mu", type=float, default=0.0, help="additive effect mean")
    p.add_argument("--sigma-a", type=float, default=1.0, help="additive effect sd")
    p.add_argument("--sigma-hoc", type=float, default=1.0, help="uncorrelated term sd")
    p.add_argument("--base", type=float, default=0.0, help="eggbox low value")
    p.add_argument("--amplitude", type=float, default=1.0, help="eggbox step")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help=".csv, or .bin/.snap for a snapshot")

    p = sub.add_parser("perturb", help="delete, noise, or bias-sample a landscape")
    _add_input_options(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--missing", type=float, metavar="ALPHA",
                       help="fraction of variants to delete")
    group.add_argument("--noise", type=float, metavar="BETA",
                       help="noise sd as a multiple of the fitness sd")
    group.add_argument("--biased-rate", type=float, metavar="RATE",
                       help="per-site mutation rate around the focal genotype")
    p.add_argument("--biased-draws", type=int, default=1000)
    p.add_argument("--focal", help="focal sequence (default: global optimum)")
    p.add_argument("--allow-optimum-loss", action="store_true",
                   help="let --missing delete the global optimum too")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("walk", help="batch adaptive walks from random starts")
    _add_input_options(p)
    p.add_argument("--method", default="greedy", choices=["greedy", "stochastic"])
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="JSON result path; stdout when omitted")
    return parser


def _cmd_build(args) -> None:
    save_snapshot(_load(args), args.out)


def _cmd_analyze(args) -> None:
    landscape = _load(args)
    features = None
    if args.features and args.features != "all":
        features = frozenset(key.strip() for key in args.features.split(",") if key.strip())
        unknown = features - set(FEATURE_KEYS)
        if unknown:
            raise _UsageError(f"unknown feature(s): {', '.join(sorted(unknown))}")
    opts = AnalyzeOptions(
        features=features,
        eps_tol=args.eps_tol,
        sigma=args.sigma,
        n_walks=args.walks,
        walk_length=args.walk_length,
        seed=args.seed,
        max_optima=args.max_optima,
        max_fit_nodes=args.max_fit_nodes,
    )
    report = analyze(landscape, opts)
    if args.out:
        write_report(report, args.out, args.format)
    else:
        print(report_to_json(report))


def _cmd_generate(args) -> None:
    config = GeneratorConfig(
        model=args.model,
        n=args.n,
        alphabet_sizes=args.m,
        mu_a=args.mu,
        sigma_a=args.sigma_a,
        sigma_hoc=args.sigma_hoc,
        k=args.k,
        nk_neighborhood=args.nk_neighborhood,
        base=args.base,
        amplitude=args.amplitude,
        seed=args.seed,
    )
    _write_landscape(generate(config), args.out)


def _cmd_perturb(args) -> None:
    landscape = _load(args)
    if args.missing is not None:
        result = subsample(
            landscape, args.missing, args.seed,
            keep_global_optimum=not args.allow_optimum_loss,
        )
    elif args.noise is not None:
        result = add_noise(landscape, args.noise, args.seed)
    else:
        if args.focal:
            alleles = tuple(args.focal.split(args.delimiter)) if args.delimiter else tuple(args.focal)
            focal = landscape.space.encode(alleles)
        else:
            focal = int(landscape.codes[landscape.optima.global_optimum])
        result, size = biased_sample(
            landscape, focal, args.biased_rate, args.biased_draws, args.seed
        )
        print(f"realized library size: {size}", file=sys.stderr)
    _write_landscape(result, args.out, args.delimiter)


def _cmd_walk(args) -> None:
    landscape = _load(args)
    result = run_de(landscape, args.method, args.runs, args.seed)
    sp = landscape.space
    payload = {
        "method": result.method,
        "runs": result.runs,
        "seed": result.seed,
        "mean_percentile": result.mean_percentile,
        "per_run": [
            {
                "start": sp.format_sequence(r.start),
                "endpoint": sp.format_sequence(r.endpoint),
                "endpoint_fitness": r.endpoint_fitness,
                "percentile": r.percentile,
            }
            for r in result.per_run
        ],
    }
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


_COMMANDS = {
    "build": _cmd_build,
    "analyze": _cmd_analyze,
    "generate": _cmd_generate,
    "perturb": _cmd_perturb,
    "walk": _cmd_walk,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (FitgraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
