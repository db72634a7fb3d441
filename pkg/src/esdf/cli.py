"""Command line entry point: ``esdf {generate,run,sweep,embed,ari}``."""
from __future__ import annotations

import argparse
import logging
import sys

from . import experiment as ex
from .formats import read_ensemble
from .similarity import adjusted_rand

log = logging.getLogger("esdf")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="key=value experiment file; flags override its entries")
    p.add_argument("--dataset", help="CSV or whitespace-delimited feature table")
    p.add_argument("--label-col", help="class column: first, last, none, an index or a header name")
    p.add_argument("--drop-cols", help="comma-separated columns to ignore (ids)")
    p.add_argument("--k", type=int, help="clusters per k-means run and consensus target (default: class count)")
    p.add_argument("--k-sweep", help="selection sizes a:b (default 1:size)")
    p.add_argument("--ensembles", type=int, help="number of independent ensembles")
    p.add_argument("--size", type=int, help="k-means runs per ensemble")
    p.add_argument("--seed", type=int)
    p.add_argument("--select", help="comma-separated subset of none,esdf,cas,diversity,frequency")
    p.add_argument("--consensus", help="comma-separated subset of cspa,hgpa")
    p.add_argument("--linkage", choices=("single", "average", "complete"))
    p.add_argument("--balance-tol", type=float)
    p.add_argument("--restarts", type=int, help="FM restarts per bisection in HGPA")
    p.add_argument("--standardize", action="store_true", default=None, help="z-score every feature")
    p.add_argument("--distinct-full", action="store_true", default=None,
                   help="full-ensemble consensus over distinct partitions only")
    p.add_argument("--out", help="output directory")


def build_spec(args: argparse.Namespace) -> ex.ExperimentSpec:
    values = ex.read_spec_file(args.spec) if args.spec else {}
    for name in ("dataset", "label_col", "k", "ensembles", "size", "seed", "linkage", "balance_tol",
                 "restarts", "standardize", "distinct_full", "out", "select_k", "n_neighbors",
                 "target_dim"):
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    for name in ("drop_cols", "select", "consensus", "k_sweep", "dims"):
        v = getattr(args, name, None)
        if v is not None:
            values[name] = ex._coerce(name, v)
    return ex.make_spec(**values)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="esdf", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("generate", "write k-means ensembles as ensemble-<id>.txt"),
        ("run", "selection x consensus grid, results.csv + summary.csv + summary.svg"),
        ("sweep", "AR against k for the diversity, frequency and weight rankings"),
        ("embed", "LLE embedding of the distinct partitions of one ensemble"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        if name == "embed":
            p.add_argument("--ensemble-id", type=int, default=1)
            p.add_argument("--select-k", type=int, help="selection size for ESDF and CAS (default 5)")
            p.add_argument("--n-neighbors", type=int)
            p.add_argument("--target-dim", type=int)
            p.add_argument("--dims", help="two zero-based axes to plot, e.g. 2,3")

    p = sub.add_parser("ari", help="adjusted Rand index of two partitions")
    p.add_argument("first", help="ensemble-format file")
    p.add_argument("second", nargs="?", help="second file; if omitted, rows 0 and 1 of FIRST")
    p.add_argument("--row-a", type=int, default=0)
    p.add_argument("--row-b", type=int, default=None)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "ari":
            a = read_ensemble(args.first)
            if args.second:
                b, row_b = read_ensemble(args.second), args.row_b or 0
            else:
                b, row_b = a, 1 if args.row_b is None else args.row_b
            print(format(adjusted_rand(a[args.row_a], b[row_b]), ".12g"))
            return 0
        spec = build_spec(args)
        if args.command == "generate":
            for path in ex.cmd_generate(spec):
                print(path)
        elif args.command == "run":
            for path in ex.cmd_run(spec):
                print(path)
        elif args.command == "sweep":
            for path in ex.cmd_sweep(spec):
                print(path)
        elif args.command == "embed":
            for path in ex.cmd_embed(spec, args.ensemble_id):
                print(path)
    except (ValueError, OSError, IndexError) as exc:
        print(f"esdf {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
