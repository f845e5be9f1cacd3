"""`table`: competitive ratios on a one- or two-border interval."""

import argparse

from app.config import Settings
from app.core.intervals import IntervalSpec, competitive_table

from ..options import fraction_arg
from ..output import CommandResult

NAME = "table"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Competitive table for a restricted interval")
    parser.add_argument("--a", type=fraction_arg, required=True)
    parser.add_argument("--b", type=fraction_arg, required=True)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    report = competitive_table(IntervalSpec.of(args.a, args.b)).to_model()
    header = {"a": report.a, "b": report.b, "p": report.p, "case": report.case}
    rows = [{**header, **e.model_dump()} for e in report.entries]
    return CommandResult(NAME, report, rows=rows)
