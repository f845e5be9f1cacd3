"""Command-line front end: `bincover <command> [options]`."""

import argparse
import logging
import sys
from typing import TextIO

from app.config import get_settings
from app.exceptions import EXIT_EXPECTATION, EXIT_OK, BinCoverError, handle_error, handle_unexpected
from app.utils import setup_logging

from .commands import COMMANDS
from .options import common_parser, settings_from
from .output import CommandResult, render

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="bincover",
        description="Online bin covering laboratory: Dual Next-Fit, Dual Harmonic and their performance measures.",
    )
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parents = [common_parser()]
    for command in COMMANDS:
        command.register(subparsers, parents)
    return parser


def dispatch(argv: list[str] | None = None, stdout: TextIO | None = None) -> int:
    """
    Parse `argv`, run the command and write its report to `stdout`.

    Returns:
        0 on success, 1 when an expectation failed, 2 on a usage error
    """
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or EXIT_OK)
    except BinCoverError as e:
        return handle_error(e)

    setup_logging(debug=args.debug)
    try:
        settings = settings_from(args)
        result: CommandResult = args.handler(args, settings)
        fmt = args.format or getattr(args, "default_format", "json")
        stdout.write(render(result, fmt, args.mode, settings))
    except BinCoverError as e:
        return handle_error(e)
    except Exception as e:
        return handle_unexpected(e)

    if result.failures:
        for failure in result.failures:
            logger.error(f"Expectation failed: {failure}")
        return EXIT_EXPECTATION
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    return dispatch(argv)


__all__ = ["build_parser", "dispatch", "main"]
