"""Shared argparse options and argument converters."""

import argparse
from fractions import Fraction

from app.config import Settings, get_settings
from app.core.algorithms import AlgorithmId, HarmonicConfig
from app.core.intervals import IntervalSpec
from app.exceptions import UsageError

from .output import FORMATS, MODES


def fraction_arg(text: str) -> Fraction:
    """argparse type for exact rationals: `3/5`, `0.6` or `1`."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: '{text}'") from e


def int_list(text: str) -> list[int]:
    """argparse type for comma-separated integers."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from e


def fraction_list(text: str) -> list[Fraction]:
    return [fraction_arg(part) for part in text.split(",") if part.strip()]


def interval_arg(text: str) -> IntervalSpec:
    """argparse type for `A:B` restriction intervals."""
    a, sep, b = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected an interval A:B, got '{text}'")
    return IntervalSpec.of(fraction_arg(a), fraction_arg(b))


def common_parser() -> argparse.ArgumentParser:
    """Flags every subcommand accepts; used as an argparse parent."""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("common options")
    group.add_argument("--seed", type=int, default=None, help="Master seed (default: fixed constant)")
    group.add_argument("--format", choices=FORMATS, default=None, help="Output format (default: json)")
    group.add_argument("--mode", choices=MODES, default="exact", help="Print rationals exactly or as decimals")
    group.add_argument("--budget", type=int, default=None, help="Node budget for exact worst-order search")
    group.add_argument("--node-limit", type=int, default=None, help="Node budget for exact OPT")
    group.add_argument("--jobs", type=int, default=None, help="Worker processes (default: 1)")
    group.add_argument("--debug", action="store_true", help="Log at DEBUG level on stderr")
    return parser


def add_algorithm(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--alg",
        choices=[a.value for a in AlgorithmId],
        required=required,
        default=None if required else AlgorithmId.DNF.value,
    )
    parser.add_argument("--k", type=int, default=2, help="Dual Harmonic classes (default: 2)")


def resolve_k(args: argparse.Namespace) -> int | None:
    """Validated k for DHk, None for DNF."""
    if AlgorithmId(args.alg) is AlgorithmId.DNF:
        return None
    return HarmonicConfig(args.k).k


def settings_from(args: argparse.Namespace) -> Settings:
    """Settings with the command-line overrides applied."""
    jobs = getattr(args, "jobs", None)
    if jobs is not None and jobs < 1:
        raise UsageError(f"--jobs must be ≥ 1, got {jobs}")
    return get_settings().with_overrides(
        default_seed=getattr(args, "seed", None),
        worst_order_budget=getattr(args, "budget", None),
        opt_node_limit=getattr(args, "node_limit", None),
        jobs=jobs,
        debug=getattr(args, "debug", None) or None,
    )
