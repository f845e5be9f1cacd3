"""Experiment reports and the expectations they record."""

import functools
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable

import numpy as np
from mpmath import mp, mpf

from app.config import get_settings
from app.core.items import format_rational
from app.exceptions import ExpectationFailure, MissingProvenance
from app.models.schemas import ExpectationSchema, ExperimentReportSchema

logger = logging.getLogger(__name__)


class Source(str, Enum):
    """Where an expected value comes from."""

    THEORY = "theory"
    ORACLE = "oracle"
    CERTIFICATE = "certificate"
    ANALYTIC = "analytic"


Value = Fraction | int | float | mpf


def _text(value: Value | None) -> str | None:
    if value is None:
        return None
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (Fraction, int)):
        return format_rational(value)
    if isinstance(value, mpf):
        return mp.nstr(value, get_settings().float_digits)
    return f"{float(value):.{get_settings().float_digits}g}"


def _plain(value: Any) -> Any:
    """JSON-ready copy of a record value."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, mpf):
        return float(value)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class Expectation:
    name: str
    expected: Value
    observed: Value
    source: Source
    tolerance: Value | None = None
    # "eq" within tolerance, "le" observed ≤ expected + tolerance, "ge" observed ≥ expected - tolerance
    relation: str = "eq"

    @property
    def passed(self) -> bool:
        slack = self.tolerance or 0
        if self.relation == "le":
            return self.observed <= self.expected + slack
        if self.relation == "ge":
            return self.observed >= self.expected - slack
        if self.tolerance is None:
            return self.observed == self.expected
        return abs(self.observed - self.expected) <= self.tolerance

    def to_model(self) -> ExpectationSchema:
        expected = _text(self.expected)
        if self.relation != "eq":
            expected = f"{'≤' if self.relation == 'le' else '≥'} {expected}"
        return ExpectationSchema(
            name=self.name,
            expected=expected,
            observed=_text(self.observed),
            tolerance=_text(self.tolerance),
            source=self.source.value,
            passed=self.passed,
        )


@dataclass
class ExperimentReport:
    name: str
    parameters: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    records: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    expectations: list[Expectation] = field(default_factory=list)
    wall_clock: float | None = None

    def expect(
        self,
        name: str,
        expected: Value,
        observed: Value,
        source: Source | str | None,
        tolerance: Value | None = None,
        relation: str = "eq",
    ) -> Expectation:
        """
        Record a pass/fail line.

        Raises:
            MissingProvenance: no source was given for the expected value
        """
        if not source:
            raise MissingProvenance(f"{self.name}: expectation '{name}' has no source")
        expectation = Expectation(name, expected, observed, Source(source), tolerance, relation)
        self.expectations.append(expectation)
        level = logging.INFO if expectation.passed else logging.WARNING
        logger.log(level, f"{self.name}: {name} {'ok' if expectation.passed else 'FAILED'} ({_text(observed)})")
        return expectation

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.expectations)

    @property
    def failures(self) -> list[Expectation]:
        return [e for e in self.expectations if not e.passed]

    def raise_for_failures(self) -> None:
        if self.failures:
            lines = "; ".join(
                f"{e.name}: expected {_text(e.expected)}, observed {_text(e.observed)}" for e in self.failures
            )
            raise ExpectationFailure(f"{self.name}: {lines}")

    def to_model(self, timing: bool = False) -> ExperimentReportSchema:
        return ExperimentReportSchema(
            name=self.name,
            parameters=_plain(self.parameters),
            seed=self.seed,
            records=[_plain(r) for r in self.records],
            summary=_plain(self.summary),
            expectations=[e.to_model() for e in self.expectations],
            passed=self.passed,
            wall_clock=self.wall_clock if timing else None,
        )


def timed(fn: Callable[..., ExperimentReport]) -> Callable[..., ExperimentReport]:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs) -> ExperimentReport:
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_clock = time.perf_counter() - start
        logger.info(f"Experiment {report.name} finished in {report.wall_clock:.2f}s, passed={report.passed}")
        return report

    return wrapper
