"""`worst-order`: A_W of one algorithm, or DHk_W/DNF_W, on a sequence file."""

import argparse

from app.config import Settings
from app.core.algorithms import algorithm_label
from app.core.items import format_rational, read_sequence
from app.core.worst_order import relative_worst_order, worst_order_value
from app.models.schemas import MeasureReport

from ..options import add_algorithm, resolve_k
from ..output import CommandResult

NAME = "worst-order"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Worst-order covered count of a multiset")
    add_algorithm(parser, required=False)
    parser.add_argument("--input", required=True, help="Sequence file; its order is ignored")
    parser.add_argument("--sampled", action="store_true", help="Minimum over sampled orderings (an upper bound)")
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--relative", action="store_true", help="Report DHk_W / DNF_W instead")
    parser.set_defaults(handler=handle)


def _relative(args: argparse.Namespace, settings: Settings) -> CommandResult:
    seq = read_sequence(args.input)
    result = relative_worst_order(seq, k=args.k, budget=settings.worst_order_budget)
    report = MeasureReport(
        measure="relative_worst_order",
        algorithm=f"{algorithm_label('dhk', result.k)}/DNF",
        params={"k": str(result.k), "dhk_w": str(result.dhk_w), "dnf_w": str(result.dnf_w)},
        value=None if result.ratio is None else format_rational(result.ratio),
        exact=True,
        label="DHk_W / DNF_W",
    )
    return CommandResult(NAME, report)


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    if args.relative:
        args.alg = "dhk"
        resolve_k(args)
        return _relative(args, settings)
    k = resolve_k(args)
    seq = read_sequence(args.input)
    result = worst_order_value(
        args.alg,
        seq,
        mode="sampled" if args.sampled else "exact",
        samples=args.samples,
        seed=settings.default_seed,
        k=k,
        budget=settings.worst_order_budget,
        jobs=settings.jobs,
    )
    report = result.to_model(algorithm_label(args.alg, k), {"length": str(len(seq))})
    return CommandResult(NAME, report)
