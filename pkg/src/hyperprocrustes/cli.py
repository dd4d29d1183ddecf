"""Command line front end: ``align``, ``benchmark``, ``convert``, ``synth``.

Exit status is 0 on success, 2 for bad input and 3 for numerical failure.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import bench, fileio
from .descent import GdConfig, refine
from .errors import NumericalError, ValidationError
from .procrustes import align

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


def _cmd_align(args):
    target = fileio.read_pointset(args.target, args.model, auto_lift=args.auto_lift)
    source = fileio.read_pointset(args.source, args.model, auto_lift=args.auto_lift)
    w = fileio.read_weights(args.weights) if args.weights else None
    result = align(target, source, w)
    if args.refine:
        result = refine(target, source, result.R_est, GdConfig())
    if not np.all(np.isfinite(result.R_est)) or not np.isfinite(result.residual):
        raise NumericalError("alignment produced non-finite values")
    fileio.write_results(args.out, result)


def _cmd_benchmark(args):
    with open(args.config) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{args.config}: invalid JSON ({exc})") from None
    try:
        cfg = bench.BenchmarkConfig.from_dict(raw)
    except TypeError as exc:
        raise ValidationError(str(exc)) from None
    if args.workers is not None:
        cfg = bench.BenchmarkConfig.from_dict({**cfg.to_dict(), "workers": args.workers})
    os.makedirs(args.out, exist_ok=True)
    records, summary = bench.run_benchmark(cfg)
    fileio.write_trials_csv(os.path.join(args.out, "trials.csv"), records)
    summary["config"] = cfg.to_dict()
    fileio.write_json(os.path.join(args.out, "summary.json"), summary)


def _cmd_convert(args):
    X = fileio.read_pointset(args.infile, args.src_model, auto_lift=args.auto_lift)
    fileio.write_pointset(args.out, X, args.dst_model)


def _cmd_synth(args):
    rng = np.random.default_rng(args.seed)
    target, source, R_true = bench.synth_pair(args.n, args.d, args.sigma, rng)
    fileio.write_pointset(f"{args.out_prefix}_target.csv", target)
    fileio.write_pointset(f"{args.out_prefix}_source.csv", source)
    fileio.write_json(f"{args.out_prefix}_R_true.json", {"R_true": R_true})


def build_parser():
    p = argparse.ArgumentParser(
        prog="hyperprocrustes",
        description="Procrustes alignment of point sets in hyperbolic space.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("align", help="estimate the isometry taking source onto target")
    a.add_argument("--target", required=True)
    a.add_argument("--source", required=True)
    a.add_argument("--weights")
    a.add_argument("--model", choices=fileio.MODELS, default="loid",
                   help="coordinates of CSV inputs (JSON files carry their own tag)")
    a.add_argument("--refine", action="store_true",
                   help="polish the closed-form estimate by gradient descent")
    a.add_argument("--auto-lift", action="store_true",
                   help="repair slightly off-sheet loid rows instead of rejecting them")
    a.add_argument("--out", default="-")
    a.set_defaults(func=_cmd_align)

    b = sub.add_parser("benchmark", help="run the noisy Monte-Carlo comparison")
    b.add_argument("--config", required=True)
    b.add_argument("--out", required=True, help="output directory")
    b.add_argument("--workers", type=int)
    b.set_defaults(func=_cmd_benchmark)

    c = sub.add_parser("convert", help="change the coordinate model of a point file")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--from", dest="src_model", choices=fileio.MODELS, required=True)
    c.add_argument("--to", dest="dst_model", choices=("loid", "poincare"), required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--auto-lift", action="store_true")
    c.set_defaults(func=_cmd_convert)

    s = sub.add_parser("synth", help="write a random (target, source, R_true) triple")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--sigma", type=float, default=0.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out-prefix", required=True)
    s.set_defaults(func=_cmd_synth)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        args.func(args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
