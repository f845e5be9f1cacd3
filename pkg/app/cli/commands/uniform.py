"""`uniform`: Monte Carlo ratio on i.i.d. uniform items against the analytic value."""

import argparse

from app.config import Settings
from app.core.experiments import run_uniform_experiment

from ..options import add_algorithm, resolve_k
from ..output import CommandResult
from .report import experiment_result

NAME = "uniform"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Uniform-distribution Monte Carlo")
    add_algorithm(parser, required=False)
    parser.add_argument("--n", type=int, default=100_000, help="Items per trial")
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--tolerance", type=float, help="Absolute tolerance (default: 3 standard errors)")
    parser.add_argument("--timing", action="store_true", help="Include wall-clock seconds in the report")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    k = resolve_k(args) or 1
    report = run_uniform_experiment(
        args.alg,
        k,
        args.n,
        args.trials,
        seed=settings.default_seed,
        jobs=settings.jobs,
        tolerance=args.tolerance,
        sigmas=settings.tolerance_sigmas,
    )
    return experiment_result(NAME, report, args.timing)
