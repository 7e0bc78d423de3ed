"""Command line entry point.

Subcommands: ``embed``, ``cv``, ``simulate``, ``theory``.
Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .encoder import EmptyClassError, EncodeOptions, encode
from .evaluation import repeat_cv
from .experiments import SCENARIOS, error_curve, point_cloud, raw_cv_error
from .evaluation import kfold_split
from .io import DataError, FORMATS, read_features, read_graph, read_labels, write_json, write_matrix
from .pairwise import KINDS, KernelSpec, pairwise_graph
from .synth import DEFAULT_B, SbmSpec
from . import theory

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_encode_flags(p):
    p.add_argument("--no-normalize", action="store_true", help="skip unit-norm row scaling")
    p.add_argument("--zero-diagonal", action="store_true", help="ignore A(i,i)")


def _add_input_flags(p):
    p.add_argument("--graph", help="graph file (dense-csv or edge-tsv)")
    p.add_argument("--format", choices=FORMATS, help="graph format (default: by extension)")
    p.add_argument("--features", help="n x p feature CSV; converted with --kernel")
    p.add_argument("--kernel", choices=KINDS, default="distance-to-kernel")
    p.add_argument("--sigma", type=float, default=1.0, help="rbf bandwidth")
    p.add_argument("--base", choices=[k for k in KINDS if k != "distance-to-kernel"], default="euclidean",
                   help="distance used by distance-to-kernel")
    p.add_argument("--labels", required=True, help="labels CSV: vertex,label")
    p.add_argument("--classes", type=int, help="class count K (default: max label)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphencoder", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"graphencoder {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("embed", help="write the n x K encoder embedding")
    _add_input_flags(p)
    _add_encode_flags(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("cv", help="repeated k-fold CV error of encoder + classifier")
    _add_input_flags(p)
    _add_encode_flags(p)
    p.add_argument("--classifier", choices=["lda", "knn"], default="lda")
    p.add_argument("--k", type=int, default=5, help="neighbours for knn")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--reps", type=int, default=50)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--no-stratify", action="store_true")
    p.add_argument("--raw", action="store_true", help="also score the classifier on raw --features")
    p.add_argument("--out", required=True)

    p = sub.add_parser("simulate", help="error-vs-n curves and embedding point clouds")
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--nmin", type=int, default=50)
    p.add_argument("--nmax", type=int, default=500)
    p.add_argument("--step", type=int, default=50)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cloud-n", type=int, default=1000, help="size of the point-cloud sample (0 to skip)")
    _add_encode_flags(p)
    p.add_argument("--out", required=True, help="curve CSV; the cloud goes to <stem>_embedding.csv")

    p = sub.add_parser("theory", help="Monte Carlo checks of the asymptotic limits")
    p.add_argument("check", choices=["moments", "scaling", "normality", "bayes-gap"])
    p.add_argument("--spec", required=True, help="JSON: B, priors, weight_max, n, sizes, reps, seed")
    p.add_argument("--out", required=True)
    return parser


def _load_graph(args):
    if args.graph and args.features:
        raise UsageError("give either --graph or --features, not both")
    if not args.graph and not args.features:
        raise UsageError("one of --graph or --features is required")
    features = None
    if args.graph:
        graph = read_graph(args.graph, args.format)
        kernel = None
    else:
        features = read_features(args.features)
        if args.kernel == "distance-to-kernel":
            kernel = KernelSpec("distance-to-kernel", base=KernelSpec(args.base, sigma=args.sigma))
        else:
            kernel = KernelSpec(args.kernel, sigma=args.sigma)
        graph = pairwise_graph(features, kernel)
    labels = read_labels(args.labels, n_classes=args.classes, n=graph.n)
    return graph, labels, features, kernel


def _kernel_dict(kernel):
    if kernel is None:
        return None
    d = {"kind": kernel.kind}
    if kernel.kind == "rbf":
        d["sigma"] = kernel.sigma
    if kernel.kind == "distance-to-kernel":
        d["base"] = _kernel_dict(kernel.base_spec)
    return d


def _opts(args):
    return EncodeOptions(normalize=not args.no_normalize, zero_diagonal=args.zero_diagonal)


def cmd_embed(args):
    graph, labels, _, _ = _load_graph(args)
    z = encode(graph, labels, _opts(args)).values
    write_matrix(z, args.out)
    return EXIT_OK


def cmd_cv(args):
    graph, labels, features, kernel = _load_graph(args)
    opts = _opts(args)
    mean, std, per_rep = repeat_cv(
        graph, labels, args.folds, args.reps, args.seed, args.classifier, args.k, opts, not args.no_stratify
    )
    results = {"encoder": {"mean_error": mean, "std": std, "per_rep": per_rep.tolist()}}
    if args.raw:
        if features is None:
            raise UsageError("--raw needs --features")
        errs = np.array([
            raw_cv_error(features, labels, kfold_split(labels, args.folds, args.seed + r, not args.no_stratify),
                         args.classifier, args.k)
            for r in range(args.reps)
        ])
        results["raw"] = {"mean_error": float(errs.mean()), "std": float(errs.std()), "per_rep": errs.tolist()}
    config = {
        "graph": args.graph,
        "format": args.format,
        "features": args.features,
        "kernel": _kernel_dict(kernel),
        "labels": args.labels,
        "classes": labels.K,
        "n": graph.n,
        "normalize": opts.normalize,
        "zero_diagonal": opts.zero_diagonal,
        "classifier": args.classifier,
        "k": args.k,
        "folds": args.folds,
        "reps": args.reps,
        "seed": args.seed,
        "stratified": not args.no_stratify,
    }
    write_json({"tool": "graphencoder", "version": __version__, "config": config, "results": results}, args.out)
    return EXIT_OK


def _cloud_path(out):
    stem, _ = os.path.splitext(out)
    return f"{stem}_embedding.csv"


def cmd_simulate(args):
    if args.nmin < 10 or args.nmax < args.nmin or args.step < 1:
        raise UsageError("need 10 <= nmin <= nmax and step >= 1")
    sizes = list(range(args.nmin, args.nmax + 1, args.step))
    opts = _opts(args)
    rows = error_curve(args.scenario, sizes, args.reps, args.seed, args.folds, opts)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "mean_error", "std", "method"])
        for n, m, s, method in rows:
            w.writerow([n, repr(m), repr(s), method])
    if args.cloud_n > 0:
        header, cloud = point_cloud(args.scenario, args.cloud_n, args.seed, opts)
        with open(_cloud_path(args.out), "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in cloud:
                w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return EXIT_OK


def _read_spec(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(cfg, dict):
        raise DataError(f"{path}: expected a JSON object")
    if "seed" not in cfg:
        raise DataError(f"{path}: 'seed' is required")
    b = np.array(cfg.get("B", DEFAULT_B.tolist()), dtype=float)
    spec = SbmSpec(B=b, priors=cfg.get("priors"), weight_max=float(cfg.get("weight_max", 0.0)))
    return spec, cfg


def cmd_theory(args):
    spec, cfg = _read_spec(args.spec)
    seed = int(cfg["seed"])
    reps = int(cfg.get("reps", 50))
    fixed = bool(cfg.get("fixed_labels", True))
    resolved = {
        "B": spec.B.tolist(),
        "priors": spec.priors.tolist(),
        "weight_max": spec.weight_max,
        "seed": seed,
        "reps": reps,
        "fixed_labels": fixed,
    }
    if args.check == "moments":
        n = int(cfg.get("n", 2000))
        rep = theory.moment_report(spec, n, reps, seed, fixed_labels=fixed).as_dict()
        rep["cross_correlation"] = theory.cross_covariance_check(spec, n, reps, seed, fixed).pooled.tolist()
        resolved["n"] = n
    elif args.check == "scaling":
        sizes = [int(s) for s in cfg.get("sizes", [500, 2000])]
        rep = theory.variance_scaling(spec, sizes, reps, seed, fixed).as_dict()
        resolved["sizes"] = sizes
    elif args.check == "normality":
        n = int(cfg.get("n", 4000))
        rep = theory.normality_report(spec, n, reps, seed, fixed).as_dict()
        resolved["n"] = n
    else:
        sizes = [int(s) for s in cfg.get("sizes", [cfg.get("n", 2000)])]
        folds = int(cfg.get("folds", 5))
        rep = {"by_n": [theory.bayes_gap(spec, n, reps, seed, folds, fixed_labels=fixed).as_dict() for n in sizes]}
        resolved.update(sizes=sizes, folds=folds)
    write_json({"tool": "graphencoder", "version": __version__, "check": args.check,
                "config": resolved, "report": rep}, args.out)
    return EXIT_OK


COMMANDS = {"embed": cmd_embed, "cv": cmd_cv, "simulate": cmd_simulate, "theory": cmd_theory}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"graphencoder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, EmptyClassError, FileNotFoundError, ValueError, IndexError, TypeError) as exc:
        print(f"graphencoder: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
