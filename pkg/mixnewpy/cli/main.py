# -*- coding: utf-8 -*-

#    Copyright (C) 2024 by
#    MixNewPy developers
#    BSD license.
"""The ``mixnewpy`` command.

Subcommands:

``basins``
    Run a basin-of-attraction experiment on a polynomial example and write
    the count table as CSV.
``verify``
    Run the numerical property suite on a polynomial example.
``train``
    Train the one-hidden-layer network on a LIBSVM regression dataset.

Exit codes are 0 on success, 1 on a runtime or verification failure and 2 on
a usage error.
"""

import argparse
import logging
import math
import os
import sys

from mixnewpy.cli.manifest import RunManifest
from mixnewpy.exceptions import ParseError
from mixnewpy.models.data import load_libsvm
from mixnewpy.models.mlp import AXES, InitSpec
from mixnewpy.models.training import train, write_aggregate_csv, write_metrics_csv
from mixnewpy.solvers.config import CubicParams, LMParams, PenaltyParams, SolverConfig, StopCriteria
from mixnewpy.testbed.basins import GRID_LAYOUTS, basin_experiment, grid, table_report
from mixnewpy.testbed.examples import MODES, example
from mixnewpy.testbed.verification import verify_example
from mixnewpy.utils.norms import is_perfect_square

__all__ = ["build_parser", "main", "cmd_basins", "cmd_verify", "cmd_train", "default_threads"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# gradient tolerances of the basin runs; ONM converges linearly at the double
# zeros of the single residual and needs the smaller one to land within the
# match tolerance
BASIN_GRAD_TOL = {"rmnm": 1e-12, "onm": 1e-18}


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got '{}'".format(text))
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got {}".format(value))
    return value


def _perfect_square(text):
    value = _positive_int(text)
    if not is_perfect_square(value):
        raise argparse.ArgumentTypeError("{} is not a perfect square".format(value))
    return value


def _finite_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a number, got '{}'".format(text))
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("expected a finite number, got {}".format(value))
    return value


def _nonnegative_float(text):
    value = _finite_float(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative number, got {}".format(value))
    return value


def _growth_factor(text):
    value = _finite_float(text)
    if not value > 1:
        raise argparse.ArgumentTypeError("expected a number greater than 1, got {}".format(value))
    return value


def _positive_float(text):
    value = _finite_float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("expected a positive number, got {}".format(value))
    return value


def _split(text):
    if text == "none":
        return None
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'none' or a fraction, got '{}'".format(text))
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError("expected a fraction in (0, 1), got {}".format(value))
    return value


def default_threads():
    """Return the worker count from ``MN_THREADS`` or the number of CPUs."""
    env = os.environ.get("MN_THREADS")
    if env:
        try:
            return _positive_int(env)
        except argparse.ArgumentTypeError:
            logger.warning("Ignoring invalid MN_THREADS=%r.", env)
    return os.cpu_count() or 1


def build_parser():
    """Return the argument parser of the ``mixnewpy`` command."""
    parser = argparse.ArgumentParser(prog="mixnewpy", description="Mixed Newton method experiments.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more log output (repeatable)")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log errors")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    basins = commands.add_parser("basins", help="run a basin-of-attraction experiment")
    basins.add_argument("--example", type=int, choices=(1, 2, 3), required=True)
    basins.add_argument("--method", choices=("rmnm", "onm"), default="rmnm")
    basins.add_argument("--mode", choices=MODES, default="single", help="residual decomposition")
    basins.add_argument("--gamma", type=_positive_float, help="penalty weight (default: per example)")
    basins.add_argument("--grid", type=_perfect_square, help="number of starts, a perfect square")
    basins.add_argument("--square", type=_finite_float, nargs=2, metavar=("LO", "HI"), help="coordinate range")
    basins.add_argument(
        "--imag-offset", type=_finite_float, default=0.0, help="imaginary part added to every coordinate"
    )
    basins.add_argument("--layout", choices=GRID_LAYOUTS, default="closed", help="placement of the grid points")
    basins.add_argument("--max-iters", type=_positive_int, default=10 ** 6)
    basins.add_argument("--grad-tol", type=_positive_float, help="gradient tolerance (default: per method)")
    basins.add_argument("--match-tol", type=_positive_float, default=1e-4)
    basins.add_argument("--threads", type=_positive_int, help="worker processes (default: MN_THREADS or CPUs)")
    basins.add_argument("--progress", action="store_true", help="show a progress bar")
    basins.add_argument("--out", help="CSV output path (default: print to stdout)")
    basins.set_defaults(handler=cmd_basins)

    verify = commands.add_parser("verify", help="check derivatives and local stability numerically")
    verify.add_argument("--example", type=int, choices=(1, 2, 3), required=True)
    verify.add_argument("--mode", choices=MODES, default="single")
    verify.add_argument("--trials", type=_positive_int, default=10)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--break-derivative", action="store_true", help="corrupt the derivatives (negative control)")
    verify.set_defaults(handler=cmd_verify)

    training = commands.add_parser("train", help="train the network on a LIBSVM dataset")
    training.add_argument("--data", required=True, help="LIBSVM regression file")
    training.add_argument("--method", choices=("lm-mnm", "lm-nm", "cnm", "cmnm"), default="lm-mnm")
    training.add_argument("--init", choices=AXES, default="complex", help="initialization axis")
    training.add_argument("--std", type=_positive_float, default=0.1)
    training.add_argument("--seed", type=int, default=0)
    training.add_argument("--trials", type=_positive_int, default=1, help="seeds seed, seed+1, ...")
    training.add_argument("--iters", type=_positive_int, default=200)
    training.add_argument("--hidden", type=_positive_int, default=10)
    training.add_argument("--split", type=_split, default=None, help="'none' or a training fraction such as 0.8")
    training.add_argument("--lambda0", type=_nonnegative_float, default=0.01)
    training.add_argument("--alpha", type=_growth_factor, default=10.0)
    training.add_argument("--mu", type=_positive_float, default=1.0)
    training.add_argument("--L", type=_positive_float, default=1.0, help="cubic regularization constant")
    training.add_argument("--line-search", action="store_true", help="double L while the cubic bound fails")
    training.add_argument("--out", help="metrics CSV path (default: print the summary only)")
    training.set_defaults(handler=cmd_train)
    return parser


def _configure_logging(args):
    if args.quiet:
        level = logging.ERROR
    else:
        level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format=LOG_FORMAT)


def _manifest_path(path):
    return path + ".manifest"


def cmd_basins(args):
    """Run a basin experiment and write its table and manifest."""
    ex = example(args.example, args.mode)
    gamma = args.gamma if args.gamma is not None else ex.gamma
    count = args.grid if args.grid is not None else ex.starts
    square = tuple(args.square) if args.square is not None else ex.square
    grad_tol = args.grad_tol if args.grad_tol is not None else BASIN_GRAD_TOL[args.method]
    threads = args.threads if args.threads is not None else default_threads()
    if not square[1] > square[0]:
        logger.error("Expected LO < HI, got %s.", square)
        return EXIT_USAGE
    if args.method == "onm" and args.imag_offset != 0:
        logger.error("The ordinary Newton method needs real starting points.")
        return EXIT_USAGE

    stop = StopCriteria(grad_tol=grad_tol, max_iters=args.max_iters, keep_history=False)
    if args.method == "rmnm":
        config = SolverConfig("rmnm_repulsive", penalty=PenaltyParams(gamma), stop=stop)
    else:
        config = SolverConfig("onm", stop=stop)
    starts = grid(square, count, 1j * args.imag_offset, args.layout)
    result = basin_experiment(ex, config, starts, args.match_tol, threads=threads, progress=args.progress)
    report = table_report([result])

    print(report.to_text(), end="")
    manifest = RunManifest(
        "basins",
        config={
            "example": args.example,
            "mode": args.mode,
            "shift": ex.shift,
            "method": config.method,
            "gamma": gamma if args.method == "rmnm" else "",
            "grid": count,
            "square": square,
            "layout": args.layout,
            "imag_offset": args.imag_offset,
            "max_iters": args.max_iters,
            "grad_tol": grad_tol,
            "step_tol": stop.step_tol,
            "divergence_bound": stop.divergence_bound,
            "match_tol": args.match_tol,
            "threads": threads,
        },
        stats={
            "elapsed_seconds": result.elapsed,
            "diverged": result.diverged,
            "total_iterations": sum(o.iterations for o in result.outcomes),
        },
    )
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as stream:
            stream.write(report.to_csv())
        manifest.artifacts["csv"] = args.out
        manifest.write(_manifest_path(args.out))
    else:
        print(report.to_csv(), end="")
    return EXIT_OK


def cmd_verify(args):
    """Run the property suite and report every property."""
    ex = example(args.example, args.mode)
    results = verify_example(ex, trials=args.trials, seed=args.seed, break_derivative=args.break_derivative)
    for r in results:
        print("{} {}{}".format("PASS" if r.passed else "FAIL", r.name, " ({})".format(r.detail) if r.detail else ""))
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.error("Failed properties: %s", "; ".join(failed))
        return EXIT_FAILURE
    return EXIT_OK


def _trial_path(path, trial, trials):
    if trials == 1:
        return path
    stem, ext = os.path.splitext(path)
    return "{}.trial{}{}".format(stem, trial, ext)


def cmd_train(args):
    """Train the network and write the metrics and manifest."""
    data = load_libsvm(args.data)
    method = args.method.replace("-", "_")
    try:
        config = SolverConfig(
            method,
            lm=LMParams(lambda0=args.lambda0, alpha=args.alpha, mu=args.mu),
            cubic=CubicParams(L=args.L, line_search=args.line_search),
            stop=StopCriteria(max_iters=args.iters),
        )
    except ValueError as err:
        logger.error("Invalid solver parameters: %s", err)
        return EXIT_USAGE
    manifest = RunManifest(
        "train",
        config={
            "data": args.data,
            "samples": data.size,
            "features": data.dimension,
            "hidden": args.hidden,
            "init": args.init,
            "std": args.std,
            "seed": args.seed,
            "trials": args.trials,
            "iters": args.iters,
            "split": "none" if args.split is None else args.split,
            **config.to_dict(),
        },
    )
    series = []
    for trial in range(args.trials):
        init = InitSpec(args.init, args.std, args.seed + trial)
        result = train(data, args.hidden, init, config, args.iters, split=args.split)
        series.append(result.mse_series())
        summary = result.summary
        line = "trial {}: mse {:.6g} r2 {:.4f} nmse_db {:.3f} iterations {} ({:.3g} s/iter)".format(
            trial,
            summary["mse"],
            summary["r2"],
            summary["nmse_db"],
            summary["iterations"],
            summary["seconds_per_iteration"],
        )
        if result.test_metrics is not None:
            line += " test mse {:.6g} r2 {:.4f}".format(result.test_metrics["mse"], result.test_metrics["r2"])
        print(line)
        for key, value in summary.items():
            manifest.stats["trial{}.{}".format(trial, key)] = value
        if args.out:
            path = _trial_path(args.out, trial, args.trials)
            write_metrics_csv(result.history, path)
            manifest.artifacts["metrics{}".format(trial)] = path

    if args.out:
        if args.trials > 1:
            stem, ext = os.path.splitext(args.out)
            path = "{}.aggregate{}".format(stem, ext)
            aggregate = write_aggregate_csv(series, path)
            manifest.artifacts["aggregate"] = path
            manifest.stats["final_mse_aver"] = float(aggregate["aver"][-1])
        manifest.write(_manifest_path(args.out))
    return EXIT_OK


def main(argv=None):
    """Entry point of the ``mixnewpy`` command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE
    _configure_logging(args)
    try:
        return args.handler(args)
    except ParseError as err:
        logger.error("Cannot parse %s: %s", getattr(args, "data", ""), err)
    except OSError as err:
        logger.error("%s", err)
    except ValueError as err:
        logger.error("%s", err)
    return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
