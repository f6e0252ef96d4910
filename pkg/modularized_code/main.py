"""
Main application entry point for the DVNUG frame toolkit.
"""
import argparse
import logging
import sys
import traceback

import numpy as np

import config
from logging_setup import setup_logging
from modules import bounds, demos, gabor, perturb, reductions
from modules.bounds import Verdict
from modules.errors import DVNUGError
from modules.lambda_set import make_grid
from modules.report_store import write_report, write_trace_csv
from modules.sequences import norm, subtract
from modules.system_io import (coefficients_to_dict, load_coefficients, load_signal, load_system, signal_to_dict,
                               system_to_dict)
from utils.helpers import canonical_json, digest, print_with_timestamp

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_FRAME = 2
EXIT_INCONCLUSIVE = 3

VERDICT_EXIT = {
    Verdict.FRAME: EXIT_OK,
    Verdict.BESSEL_ONLY: EXIT_NOT_FRAME,
    Verdict.NOT_BESSEL: EXIT_NOT_FRAME,
    Verdict.TRIVIAL: EXIT_NOT_FRAME,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


class CLIParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _report(command, args, results, spec=None):
    report = {
        "command": command,
        "grid": args.grid,
        "tol": args.tol,
        "seed": args.seed,
        "trials": args.trials,
        "results": results,
    }
    if spec is not None:
        report["config_digest"] = digest(system_to_dict(spec))
    return report


def _emit(data, path):
    if path:
        write_report(data, path)
    else:
        sys.stdout.write(canonical_json(data))


def cmd_validate(args):
    spec = load_system(args.config)
    zero = [j for j, w in enumerate(spec.windows) if w.is_zero()]
    if zero:
        logger.warning(f"Windows {zero} are identically zero")
        print_with_timestamp(f"WARNING: windows {zero} are identically zero")
    _emit(system_to_dict(spec), args.json)
    return EXIT_OK


def _bounds_results(spec, args):
    grid = make_grid(spec.params, args.grid)
    report = bounds.full_report(spec, grid, tol=args.tol, trials=args.trials, seed=args.seed)
    if args.csv:
        write_trace_csv(bounds.singular_value_trace(spec, grid), args.csv)
    return report


def cmd_bounds(args):
    spec = load_system(args.config)
    report = _bounds_results(spec, args)
    _emit(_report("bounds", args, report.to_dict(), spec), args.json)
    return VERDICT_EXIT[report.verdict]


def cmd_analyze(args):
    spec = load_system(args.config)
    Z = load_signal(args.signal, spec)
    coefficients = gabor.analysis(spec, Z)
    print_with_timestamp(f"Computed {len(coefficients)} coefficients")
    _emit(coefficients_to_dict(coefficients), args.json)
    return EXIT_OK


def cmd_synthesize(args):
    spec = load_system(args.config)
    coefficients = load_coefficients(args.coefficients, spec)
    _emit(signal_to_dict(gabor.synthesis(spec, coefficients)), args.json)
    return EXIT_OK


def cmd_reconstruct(args):
    spec = load_system(args.config)
    Z = load_signal(args.signal, spec)
    restored = gabor.reconstruct(spec, gabor.analysis(spec, Z))
    difference = subtract(Z, restored)
    max_error = max((float(np.max(np.abs(v))) for _, v in difference), default=0.0)
    results = {
        "max_error": max_error,
        "relative_error": norm(difference) / norm(Z) if not Z.is_zero() else 0.0,
        "signal": signal_to_dict(restored),
    }
    _emit(_report("reconstruct", args, results, spec), args.json)
    return EXIT_OK


def cmd_perturb(args):
    specW = load_system(args.config_w)
    specV = load_system(args.config_v)
    if specV.params != specW.params or specV.M != specW.M or specV.S != specW.S or specV.P != specW.P:
        raise DVNUGError("perturbed system must share N, r, M, P and S with the original")
    grid = make_grid(specW.params, args.grid)
    report = perturb.perturbation_report(specW, specV.windows, grid, A0=args.A0, B0=args.B0)
    results = report.to_dict()
    if report.certified:
        check = perturb.verify_perturbed(specV, report, trials=args.trials, seed=args.seed, tol=args.tol)
        results["verification"] = check._asdict()
    _emit(_report("perturb", args, results, specW), args.json)
    return EXIT_OK if report.certified else EXIT_NOT_FRAME


def cmd_reduce(args):
    spec = load_system(args.config)
    mode = args.mode
    if mode == "entries":
        grid = make_grid(spec.params, args.grid)
        entry_report = reductions.entry_bessel_report(spec, grid)
        results = {
            "mode": mode,
            "entries": [
                {"l": l, "l_prime": l_prime, "bessel_bound": bound}
                for (l, l_prime), bound in sorted(entry_report.entries.items())
            ],
            "beta0": entry_report.beta0,
            "aggregate_bound": entry_report.aggregate,
            "bessel": entry_report.bessel,
        }
        _emit(_report("reduce", args, results, spec), args.json)
        return EXIT_OK

    if mode == "mean":
        derived = reductions.mean_system(spec)
    elif mode.startswith("row:"):
        try:
            l0 = int(mode.split(":", 1)[1])
        except ValueError:
            raise DVNUGError(f"row mode needs an integer coordinate, got {mode!r}")
        derived = reductions.row_system(spec, l0)
    else:
        raise DVNUGError(f"unknown reduce mode {mode!r}; use mean, row:<l0> or entries")

    report = _bounds_results(derived, args)
    if args.out:
        write_report(system_to_dict(derived), args.out)
    results = {"mode": mode, "derived_system": system_to_dict(derived), "report": report.to_dict()}
    _emit(_report("reduce", args, results, spec), args.json)
    return VERDICT_EXIT[report.verdict]


def cmd_demo(args):
    if args.list or not args.name:
        for name, (description, _) in demos.DEMOS.items():
            print(f"{name:16s} {description}")
        return EXIT_OK
    result = demos.run_demo(args.name, resolution=args.grid, tol=args.tol, trials=args.trials, seed=args.seed)
    for check in result.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"[{status}] {check.label}: expected {check.expected!r}, got {check.actual!r}")
    print(f"{result.name}: {'PASS' if result.passed else 'FAIL'}")
    return EXIT_OK if result.passed else EXIT_NOT_FRAME


def cmd_export_demo(args):
    spec = demos.EXPORTS[args.name]()
    write_report(system_to_dict(spec), args.path)
    print_with_timestamp(f"Exported {args.name} to {args.path}")
    return EXIT_OK


def _add_common(parser):
    parser.add_argument("--grid", type=int, default=config.DEFAULT_GRID, help="grid resolution Q")
    parser.add_argument("--tol", type=float, default=config.DEFAULT_TOL, help="verdict tolerance")
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="random seed")
    parser.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS, help="empirical trials")
    parser.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")


def build_parser():
    parser = CLIParser(prog="dvnug", description="Discrete vector-valued nonuniform Gabor frame toolkit.")
    parser.add_argument("--log-level", default=None, help="override DVNUG_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CLIParser)

    validate = commands.add_parser("validate", help="validate a system config and echo it canonically")
    validate.add_argument("config")
    _add_common(validate)
    validate.set_defaults(handler=cmd_validate)

    frame = commands.add_parser("bounds", help="frame and Bessel report")
    frame.add_argument("config")
    frame.add_argument("--csv", metavar="PATH", help="write per-xi singular values")
    _add_common(frame)
    frame.set_defaults(handler=cmd_bounds)

    analyze = commands.add_parser("analyze", help="analysis coefficients of a signal")
    analyze.add_argument("config")
    analyze.add_argument("signal")
    _add_common(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    synthesize = commands.add_parser("synthesize", help="signal from coefficients")
    synthesize.add_argument("config")
    synthesize.add_argument("coefficients")
    _add_common(synthesize)
    synthesize.set_defaults(handler=cmd_synthesize)

    reconstruct = commands.add_parser("reconstruct", help="analyze, synthesize and invert the frame operator")
    reconstruct.add_argument("config")
    reconstruct.add_argument("signal")
    _add_common(reconstruct)
    reconstruct.set_defaults(handler=cmd_reconstruct)

    perturbation = commands.add_parser("perturb", help="certify a perturbed system")
    perturbation.add_argument("config_w")
    perturbation.add_argument("config_v")
    perturbation.add_argument("--A0", type=float, default=None, help="lower bound of the original system")
    perturbation.add_argument("--B0", type=float, default=None, help="upper bound of the original system")
    _add_common(perturbation)
    perturbation.set_defaults(handler=cmd_perturb)

    reduce = commands.add_parser("reduce", help="mean, row or entry reductions")
    reduce.add_argument("config")
    reduce.add_argument("--mode", default="mean", help="mean, row:<l0> or entries")
    reduce.add_argument("--out", metavar="PATH", help="write the derived system config")
    reduce.add_argument("--csv", metavar="PATH", help="write per-xi singular values of the derived system")
    _add_common(reduce)
    reduce.set_defaults(handler=cmd_reduce)

    demo = commands.add_parser("demo", help="run a built-in example")
    demo.add_argument("name", nargs="?", choices=sorted(demos.DEMOS) + sorted(demos.ALIASES))
    demo.add_argument("--list", action="store_true", help="list demos")
    _add_common(demo)
    demo.set_defaults(handler=cmd_demo)

    export = commands.add_parser("export-demo", help="write a built-in system config")
    export.add_argument("name", choices=sorted(demos.EXPORTS))
    export.add_argument("path")
    export.set_defaults(handler=cmd_export_demo)

    return parser


def main(argv=None):
    """
    Parse arguments, run one command and return its exit code.
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    logger.info(f"Running command {args.command}")
    try:
        return args.handler(args)
    except DVNUGError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        print_with_timestamp(f"ERROR: {type(e).__name__}: {str(e)}")
        logger.debug(f"Traceback: {traceback.format_exc()}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
