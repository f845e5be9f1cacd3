"""`verify`: check a trace or an OPT certificate against a sequence file."""

import argparse
import json
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from app.config import Settings
from app.core.algorithms import trace_from_model
from app.core.items import read_sequence
from app.core.oracles import PartitionCertificate, verify_certificate
from app.core.packing import validate_reasonable, verify_packing
from app.exceptions import UsageError
from app.models.schemas import CertificateSchema, TraceSchema, VerifyReport

from ..output import CommandResult

NAME = "verify"


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Verify a packing trace or a certificate")
    parser.add_argument("--input", required=True, help="Sequence file the artifact refers to")
    artifact = parser.add_mutually_exclusive_group(required=True)
    artifact.add_argument("--trace", help="Trace JSON, or the output of `run --trace`")
    artifact.add_argument("--certificate", help="Certificate JSON, or a `generate` sidecar")
    parser.add_argument("--max-open", type=int, help="Also check the reasonable-algorithm rules")
    parser.set_defaults(handler=handle)


def _load(path: str, key: str) -> dict[str, Any]:
    """Read a JSON artifact, unwrapping report envelopes and sidecars."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"Cannot read {path}: {e}")
    if isinstance(data, dict) and "report" in data:
        data = data["report"]
    if isinstance(data, dict) and isinstance(data.get(key), dict):
        data = data[key]
    if not isinstance(data, dict):
        raise UsageError(f"{path} holds no {key}")
    return data


def _verify_trace(args: argparse.Namespace) -> VerifyReport:
    seq = read_sequence(args.input)
    try:
        model = TraceSchema.model_validate(_load(args.trace, "trace"))
    except ValidationError as e:
        raise UsageError(f"{args.trace} is not a trace: {e.error_count()} validation errors")
    trace = trace_from_model(model, seq.items)
    covered = verify_packing(seq, trace.final)
    problems = []
    if covered != model.covered:
        problems.append(f"trace claims {model.covered} covered bins, replay gives {covered}")
    if args.max_open is not None:
        verdict = validate_reasonable(trace, args.max_open)
        if not verdict:
            problems.append(verdict.violation.message)
    return VerifyReport(kind="trace", covered=covered, ok=not problems, detail="; ".join(problems))


def _verify_certificate(args: argparse.Namespace) -> VerifyReport:
    seq = read_sequence(args.input)
    try:
        model = CertificateSchema.model_validate(_load(args.certificate, "certificate"))
    except ValidationError as e:
        raise UsageError(f"{args.certificate} is not a certificate: {e.error_count()} validation errors")
    covered = verify_certificate(seq, PartitionCertificate.from_model(model))
    return VerifyReport(kind="certificate", covered=covered, ok=True, detail=f"OPT ≥ {covered}")


def handle(args: argparse.Namespace, settings: Settings) -> CommandResult:
    report = _verify_trace(args) if args.trace else _verify_certificate(args)
    failures = [] if report.ok else [report.detail]
    return CommandResult(NAME, report, failures=failures)
