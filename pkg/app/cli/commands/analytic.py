"""`analytic`: expected ratios under uniform sizes, swept over k."""

import argparse

from mpmath import mp

from app.config import Settings
from app.core.analytic import analytic_sweep, eru_dnf, eru_limit
from app.exceptions import UsageError
from app.models.schemas import AnalyticReport

from ..output import CommandResult

NAME = "analytic"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Uniform-distribution expected ratio table")
    parser.add_argument("--k", type=int, help="A single k")
    parser.add_argument("--k-min", type=int, default=2)
    parser.add_argument("--k-max", type=int, default=10)
    parser.add_argument("--digits", type=int, default=None, help="Significant digits printed (default: 12)")
    parser.set_defaults(handler=handle, default_format="csv")


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    ks = [args.k] if args.k is not None else list(range(args.k_min, args.k_max + 1))
    if not ks:
        raise UsageError(f"empty k range {args.k_min}..{args.k_max}")
    digits = args.digits or settings.float_digits
    rows = [row.to_model(digits) for row in analytic_sweep(ks, settings.analytic_digits)]
    report = AnalyticReport(
        rows=rows,
        eru_dnf=mp.nstr(eru_dnf(settings.analytic_digits), digits),
        eru_limit=mp.nstr(eru_limit(settings.analytic_digits), digits),
    )
    return CommandResult(NAME, report, rows=[r.model_dump() for r in rows])
