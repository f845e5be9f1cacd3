"""`run`: one algorithm on one sequence file."""

import argparse

from app.config import Settings
from app.core.algorithms import algorithm_label, run_algorithm, trace_to_model
from app.core.items import format_rational, read_sequence, volume
from app.models.schemas import RunReport

from ..options import add_algorithm, resolve_k
from ..output import CommandResult

NAME = "run"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Run DNF or DHk on a sequence file")
    add_algorithm(parser)
    parser.add_argument("--input", required=True, help="Sequence file in the v1 format")
    parser.add_argument("--trace", action="store_true", help="Include the event trace in the report")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    k = resolve_k(args)
    seq = read_sequence(args.input)
    trace = run_algorithm(args.alg, seq, k)
    report = RunReport(
        algorithm=algorithm_label(args.alg, k),
        k=k,
        length=len(seq),
        volume=format_rational(volume(seq)),
        covered=trace.covered,
        provenance=seq.provenance or "",
        trace=trace_to_model(trace) if args.trace else None,
    )
    row = report.model_dump(mode="json", exclude={"trace"})
    return CommandResult(NAME, report, rows=[row])
