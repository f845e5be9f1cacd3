"""Rendering of command results as JSON, CSV or plain text."""

import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import pandas as pd
from pydantic import BaseModel

from app.config import Settings
from app.models.schemas import Envelope

logger = logging.getLogger(__name__)

RATIONAL = re.compile(r"^-?\d+/\d+$")
FORMATS = ("json", "csv", "text")
MODES = ("exact", "float")


@dataclass
class CommandResult:
    """
    What a command hands back to the dispatcher.

    `rows` is the table written in CSV format; without it CSV gets the
    flattened report as a single row. `failures` lists violated expectations
    and turns the exit status to 1.
    """

    command: str
    report: BaseModel
    rows: list[dict[str, Any]] | None = None
    failures: list[str] = field(default_factory=list)


def normalize(value: Any, mode: str, digits: int) -> Any:
    """Round floats to `digits` significant digits; in float mode turn rationals into decimals."""
    if isinstance(value, dict):
        return {key: normalize(v, mode, digits) for key, v in value.items()}
    if isinstance(value, list):
        return [normalize(v, mode, digits) for v in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return float(f"{value:.{digits}g}")
    if mode == "float" and isinstance(value, str) and RATIONAL.match(value):
        return f"{float(Fraction(value)):.{digits}g}"
    return value


def envelope_data(result: CommandResult, mode: str, settings: Settings) -> dict[str, Any]:
    envelope = Envelope(
        command=result.command,
        mode=mode,
        version=settings.app_version,
        report=result.report.model_dump(mode="json"),
    )
    return normalize(envelope.model_dump(mode="json"), mode, settings.float_digits)


def render_json(result: CommandResult, mode: str, settings: Settings) -> str:
    return json.dumps(envelope_data(result, mode, settings), indent=2, ensure_ascii=False) + "\n"


def _frame(result: CommandResult, mode: str, settings: Settings) -> pd.DataFrame:
    if result.rows is not None:
        rows = normalize(result.rows, mode, settings.float_digits)
        return pd.DataFrame(rows)
    report = envelope_data(result, mode, settings)["report"]
    return pd.json_normalize(report, max_level=1)


def render_csv(result: CommandResult, mode: str, settings: Settings) -> str:
    frame = _frame(result, mode, settings)
    body = frame.to_csv(index=False, lineterminator="\n")
    return f"# bincover {result.command} mode={mode}\n{body}"


def render_text(result: CommandResult, mode: str, settings: Settings) -> str:
    data = envelope_data(result, mode, settings)
    lines = [f"{result.command} ({mode})"]
    flat = pd.json_normalize(data["report"], sep=".").iloc[0].to_dict()
    width = max((len(key) for key in flat), default=0)
    for key, value in flat.items():
        lines.append(f"  {key.ljust(width)}  {value}")
    return "\n".join(lines) + "\n"


def render(result: CommandResult, fmt: str, mode: str, settings: Settings) -> str:
    if fmt == "csv":
        return render_csv(result, mode, settings)
    if fmt == "text":
        return render_text(result, mode, settings)
    return render_json(result, mode, settings)


def write_table(rows: list[dict[str, Any]], path, digits: int) -> None:
    """Write plot-data or sweep rows as a CSV file."""
    pd.DataFrame(normalize(rows, "float", digits)).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(rows)} rows to '{path}'")

