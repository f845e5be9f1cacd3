"""`minmin`: closed-form min/min ratios of both algorithms on (a, b)."""

import argparse

from app.config import Settings
from app.core.intervals import IntervalSpec, minmin_ratios
from app.models.schemas import MinMinReport

from ..options import fraction_arg
from ..output import CommandResult

NAME = "minmin"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Min/min ratios on a restriction interval")
    parser.add_argument("--a", type=fraction_arg, default=0)
    parser.add_argument("--b", type=fraction_arg, default=1)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    spec = IntervalSpec.of(args.a, args.b)
    ratios = [r.to_model() for r in minmin_ratios(spec)]
    report = MinMinReport(a=str(spec.a), b=str(spec.b), p=spec.p, ratios=ratios)
    return CommandResult(NAME, report, rows=[r.model_dump() for r in ratios])
