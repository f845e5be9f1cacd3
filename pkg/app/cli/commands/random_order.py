"""`random-order`: expected covered count over uniformly random orderings."""

import argparse
from fractions import Fraction

from app.config import Settings
from app.core.algorithms import AlgorithmId, algorithm_label, covered_count
from app.core.generators import default_eps, gen_two_size
from app.core.items import format_rational, read_sequence
from app.core.markov import MarkovChain, expected_closes_per_item
from app.core.oracles import opt_exact, opt_two_size
from app.core.random_order import (
    exact_expected_dnf_two_size,
    exact_random_order_average,
    iid_two_size_estimate,
    random_order_estimate,
)
from app.exceptions import UsageError
from app.models.schemas import MeasureReport

from ..options import add_algorithm, fraction_arg, resolve_k
from ..output import CommandResult

NAME = "random-order"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Random-order expectation of a multiset")
    add_algorithm(parser, required=False)
    source = parser.add_argument_group("input")
    source.add_argument("--input", help="Sequence file; its order is ignored")
    source.add_argument("--l", type=int, help="Two-size input: items of size 1-eps")
    source.add_argument("--s", type=int, help="Two-size input: items of size eps")
    source.add_argument("--iid", type=int, metavar="N", help="N i.i.d. fair two-size items (DNF only)")
    parser.add_argument("--eps", type=fraction_arg, help="Two-size eps (default below 1/(l+s))")
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--opt", action="store_true", help="Compute OPT with the exact oracle and report ratios")
    parser.add_argument("--exhaustive", action="store_true", help="Average over every distinct ordering")
    parser.set_defaults(handler=handle)


def _from_file(args: argparse.Namespace, settings: Settings) -> MeasureReport:
    k = resolve_k(args)
    label = algorithm_label(args.alg, k)
    multiset = read_sequence(args.input)
    opt = opt_exact(multiset, settings.opt_node_limit) if args.opt else None
    params = {"length": str(len(multiset))}
    if args.exhaustive:
        value = exact_random_order_average(args.alg, multiset, k)
        return MeasureReport(
            measure="random_order",
            algorithm=label,
            params=params,
            value=format_rational(value),
            exact=True,
            opt=None if opt is None else str(opt),
            ratio=format_rational(value / opt) if opt else None,
            label="average over all distinct orderings",
        )
    estimate = random_order_estimate(
        args.alg, multiset, args.samples, settings.default_seed, k, opt=opt, jobs=settings.jobs
    )
    return MeasureReport(
        measure="random_order",
        algorithm=label,
        params=params,
        estimate=estimate.to_model(),
        exact=False,
        opt=None if opt is None else str(opt),
    )


def _two_size(args: argparse.Namespace, settings: Settings) -> MeasureReport:
    l, s = args.l or 0, args.s or 0
    n = l + s
    eps = args.eps if args.eps is not None else default_eps(Fraction(1, n) if n else Fraction(1))
    opt = opt_two_size(l, s, eps)
    k = args.k if AlgorithmId(args.alg) is AlgorithmId.DHK else None
    if k is not None:
        resolve_k(args)
        # the smalls total below 1, so DHk covers the same on every ordering
        value = Fraction(covered_count(AlgorithmId.DHK, gen_two_size(None, eps, settings.default_seed, (l, s)), k))
    else:
        value = exact_expected_dnf_two_size(l, s)
    return MeasureReport(
        measure="random_order",
        algorithm=algorithm_label(args.alg, k),
        params={"l": str(l), "s": str(s), "eps": format_rational(eps)},
        value=format_rational(value),
        exact=True,
        opt=str(opt),
        ratio=format_rational(value / opt) if opt else None,
        label="E over random orderings",
    )


def _iid(args: argparse.Namespace, settings: Settings) -> MeasureReport:
    if AlgorithmId(args.alg) is not AlgorithmId.DNF:
        raise UsageError("--iid supports --alg dnf only")
    n = args.iid
    eps = args.eps if args.eps is not None else default_eps(Fraction(1, max(n, 1)))
    estimate = iid_two_size_estimate(n, eps, args.samples, settings.default_seed, settings.jobs)
    rate = expected_closes_per_item(MarkovChain.dnf_two_size())
    return MeasureReport(
        measure="iid_two_size",
        algorithm="DNF",
        params={"n": str(n), "eps": format_rational(eps), "stationary_rate": format_rational(rate)},
        estimate=estimate.to_model(),
        exact=False,
        notes=[f"stationary closing rate {rate} covered bins per item"],
    )


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    sources = {
        "--input": args.input is not None,
        "--l/--s": args.l is not None or args.s is not None,
        "--iid": args.iid is not None,
    }
    chosen = [name for name, given in sources.items() if given]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --input, --l/--s or --iid")
    if args.input is not None:
        report = _from_file(args, settings)
    elif args.iid is not None:
        report = _iid(args, settings)
    else:
        report = _two_size(args, settings)
    return CommandResult(NAME, report)
