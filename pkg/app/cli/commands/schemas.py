"""`schemas`: locate the shipped report schemas or regenerate them."""

import argparse
import json
import logging
from pathlib import Path

from pydantic import BaseModel

from app.config import Settings
from app.models.schemas import (
    AnalyticReport,
    CompetitiveTableSchema,
    Envelope,
    ErrorResponse,
    ExperimentReportSchema,
    FamilySchema,
    MeasureReport,
    MinMinReport,
    RunReport,
    SchemaIndex,
    VerifyReport,
)

from ..output import CommandResult

logger = logging.getLogger(__name__)

NAME = "schemas"
SCHEMA_DIR = Path(__file__).resolve().parents[3] / "schemas"

# schema file stem -> model of the `report` field (or of the whole document)
REPORT_MODELS: dict[str, type[BaseModel]] = {
    "run": RunReport,
    "generate": FamilySchema,
    "worst-order": MeasureReport,
    "random-order": MeasureReport,
    "minmin": MinMinReport,
    "uniform": ExperimentReportSchema,
    "analytic": AnalyticReport,
    "table": CompetitiveTableSchema,
    "report": ExperimentReportSchema,
    "verify": VerifyReport,
    "schemas": SchemaIndex,
    "envelope": Envelope,
    "error": ErrorResponse,
}


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Show or write the JSON report schemas")
    parser.add_argument("--write", metavar="DIR", help="Write one schema file per command to DIR")
    parser.set_defaults(handler=handle)


def write_schemas(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for stem, model in REPORT_MODELS.items():
        path = directory / f"{stem}.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        paths.append(path)
    logger.info(f"Wrote {len(paths)} schemas to '{directory}'")
    return paths


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    if args.write:
        directory = Path(args.write)
        files = [p.name for p in write_schemas(directory)]
    else:
        directory = SCHEMA_DIR
        files = sorted(p.name for p in directory.glob("*.json"))
    report = SchemaIndex(directory=str(directory), files=files)
    return CommandResult(NAME, report, rows=[{"file": name} for name in files])
