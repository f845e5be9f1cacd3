"""`report`: run a named experiment and print its verdicts."""

import argparse
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any

from app.config import Settings
from app.core.experiments import EXPERIMENTS, ExperimentReport, ratio_vs_k_series, ratio_vs_n_series
from app.core.intervals import IntervalSpec

from ..options import add_algorithm, fraction_arg, fraction_list, int_list, interval_arg, resolve_k
from ..output import CommandResult, write_table

logger = logging.getLogger(__name__)

NAME = "report"

DEFAULT_INTERVALS = (
    IntervalSpec.of(Fraction(2, 5), Fraction(3, 5)),
    IntervalSpec.of(Fraction(3, 10), Fraction(2, 3)),
    IntervalSpec.of(Fraction(1, 5), Fraction(9, 20)),
)
DEFAULT_PLOT_KS = list(range(2, 21))
DEFAULT_PLOT_NS = [10, 20, 50, 100, 200, 500]


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Run an experiment driver")
    parser.add_argument("name", choices=sorted(EXPERIMENTS))
    add_algorithm(parser, required=False)
    params = parser.add_argument_group("experiment parameters")
    params.add_argument("--n", type=int)
    params.add_argument("--trials", type=int)
    params.add_argument("--ns", type=int_list, help="Comma-separated n values (rwor)")
    params.add_argument("--ks", type=int_list, help="Comma-separated k values (worst_order_suite)")
    params.add_argument("--l", type=int)
    params.add_argument("--s", type=int)
    params.add_argument("--eps", type=fraction_arg)
    params.add_argument("--eps-list", type=fraction_list, help="Comma-separated eps values (minmin)")
    params.add_argument("--samples", type=int, default=1000)
    params.add_argument("--p", type=int, default=2)
    params.add_argument("--a", type=fraction_arg, default=0)
    params.add_argument("--b", type=fraction_arg, default=Fraction(3, 5))
    params.add_argument("--bins", type=int, default=10)
    params.add_argument("--max-items", type=int)
    params.add_argument("--interval", type=interval_arg, action="append", help="A:B, repeatable (interval_sweep)")
    params.add_argument("--tolerance", type=float, help="Absolute tolerance (uniform)")
    output = parser.add_argument_group("report output")
    output.add_argument("--timing", action="store_true", help="Include wall-clock seconds in the report")
    output.add_argument("--plot-data", metavar="DIR", help="Write ratio_vs_k.csv and ratio_vs_n.csv to DIR")
    output.add_argument("--plot-ks", type=int_list, default=None)
    output.add_argument("--plot-ns", type=int_list, default=None)
    parser.set_defaults(handler=handle)


def experiment_kwargs(args: argparse.Namespace, settings: Settings) -> dict[str, Any]:
    """Driver arguments for `args.name`, defaults filled in."""
    seed, jobs = settings.default_seed, settings.jobs
    name = args.name
    if name == "uniform":
        k = resolve_k(args) or 1
        return {
            "alg": args.alg,
            "k": k,
            "n": args.n or 100_000,
            "trials": args.trials or 20,
            "seed": seed,
            "jobs": jobs,
            "tolerance": args.tolerance,
            "sigmas": settings.tolerance_sigmas,
        }
    if name == "uniform_opt_check":
        return {"n": args.n or 12, "trials": args.trials or 20, "seed": seed}
    if name == "random_order":
        return {
            "l": args.l if args.l is not None else 50,
            "s": args.s if args.s is not None else 50,
            "eps": args.eps,
            "samples": args.samples,
            "seed": seed,
            "k": args.k,
            "jobs": jobs,
            "sigmas": settings.tolerance_sigmas,
        }
    if name == "interval_sweep":
        return {"specs": list(args.interval or DEFAULT_INTERVALS), "n": args.n or 60}
    if name == "rwor":
        return {"ns": args.ns or [1, 2, 5, 20], "k": args.k}
    if name == "worst_order_suite":
        return {"max_items": args.max_items or 8, "ks": tuple(args.ks or (2, 3))}
    if name == "minmin":
        return {"p": args.p, "b": args.b, "eps_list": args.eps_list, "bins": args.bins, "a": args.a}
    return {"max_items": args.max_items or 6, "k": args.k}


def write_plot_data(directory: str, ks: list[int] | None, ns: list[int] | None, digits: int) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    k_path, n_path = out / "ratio_vs_k.csv", out / "ratio_vs_n.csv"
    write_table(ratio_vs_k_series(ks or DEFAULT_PLOT_KS), k_path, digits)
    write_table(ratio_vs_n_series(ns or DEFAULT_PLOT_NS), n_path, digits)
    return [k_path, n_path]


def experiment_result(command: str, report: ExperimentReport, timing: bool = False) -> CommandResult:
    model = report.to_model(timing)
    rows = model.records or [e.model_dump() for e in model.expectations]
    failures = [f"{e.name}: expected {e.expected}, observed {e.observed}" for e in model.expectations if not e.passed]
    return CommandResult(command, model, rows=rows, failures=failures)


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    driver = EXPERIMENTS[args.name]
    report = driver(**experiment_kwargs(args, settings))
    if args.plot_data:
        paths = write_plot_data(args.plot_data, args.plot_ks, args.plot_ns, settings.float_digits)
        report.summary["plot_data"] = [str(p) for p in paths]
    return experiment_result(NAME, report, args.timing)
