"""Restriction intervals, their maximal border and the closed-form ratios over them."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from app.core.items import ONE, ZERO, Sequence, format_rational
from app.exceptions import BadParams, BoundaryB, NoBorder, OutOfInterval, UnsupportedInterval
from app.models.schemas import CompetitiveTableSchema, MinMinSchema, TableEntrySchema

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class BorderCase(str, Enum):
    NONE = "none"
    ONE = "one_border"
    TWO = "two_border"
    MORE = "more"


@dataclass(frozen=True)
class IntervalSpec:
    """
    Item sizes restricted to the open interval (a, b).

    `p` is the index of the maximal border: 1/p is the largest 1/l strictly
    below b, so p = floor(1/b) + 1.
    """

    a: Fraction
    b: Fraction
    p: int

    @classmethod
    def of(cls, a: Fraction | int | str, b: Fraction | int | str) -> "IntervalSpec":
        a, b = Fraction(a), Fraction(b)
        if not ZERO <= a < b <= ONE:
            raise BadParams(f"Interval ({a}, {b}) must satisfy 0 ≤ a < b ≤ 1")
        return cls(a, b, math.floor(1 / b) + 1)

    @classmethod
    def unrestricted(cls) -> "IntervalSpec":
        return cls.of(0, 1)

    @property
    def border(self) -> Fraction:
        return Fraction(1, self.p)

    @property
    def case(self) -> BorderCase:
        return classify_interval(self.a, self.b)

    @property
    def has_border(self) -> bool:
        return self.a < self.border

    @property
    def is_unrestricted(self) -> bool:
        return self.a == ZERO and self.b == ONE

    def contains(self, item: Fraction) -> bool:
        return self.a < item < self.b

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def classify_interval(a: Fraction, b: Fraction) -> BorderCase:
    """Count the harmonic borders 1/l inside (a, b)."""
    p = math.floor(1 / Fraction(b)) + 1
    a = Fraction(a)
    if a >= Fraction(1, p):
        return BorderCase.NONE
    if a >= Fraction(1, p + 1):
        return BorderCase.ONE
    if a >= Fraction(1, p + 2):
        return BorderCase.TWO
    return BorderCase.MORE


@dataclass(frozen=True)
class SizeProfile:
    small: int = 0
    medium: int = 0
    large: int = 0

    @property
    def total(self) -> int:
        return self.small + self.medium + self.large


def size_profile(seq: Sequence, spec: IntervalSpec) -> SizeProfile:
    """
    Count items below 1/(p+1), in [1/(p+1), 1/p) and in [1/p, b).

    Raises:
        OutOfInterval: an item is outside (a, b)
    """
    small = medium = large = 0
    lower = Fraction(1, spec.p + 1)
    for index, item in enumerate(seq):
        if not spec.contains(item):
            raise OutOfInterval(f"Item {index} of size {item} outside {spec}")
        if item >= spec.border:
            large += 1
        elif item >= lower:
            medium += 1
        else:
            small += 1
    return SizeProfile(small, medium, large)


@dataclass(frozen=True)
class MinMinRatio:
    algorithm: str
    ratio: Fraction
    has_border: bool
    formula: str

    def to_model(self) -> MinMinSchema:
        return MinMinSchema(
            algorithm=self.algorithm,
            ratio=format_rational(self.ratio),
            has_border=self.has_border,
            formula=self.formula,
        )


def minmin_ratio_dnf(spec: IntervalSpec) -> MinMinRatio:
    """
    Dual Next-Fit min/min ratio max{(1+1/p)/(1+b), pb/(1+b)}.

    Unrestricted input and intervals without a border give 1.

    Raises:
        BoundaryB: b = 1/(p-1), where the second term reaches 1
    """
    if spec.is_unrestricted:
        return MinMinRatio("DNF", ONE, True, "unrestricted")
    if not spec.has_border:
        return MinMinRatio("DNF", ONE, False, "no border: DHk packs as DNF")
    p, b = spec.p, spec.b
    if p > 1 and b == Fraction(1, p - 1):
        raise BoundaryB(f"b = {b} equals 1/(p-1) for p = {p}")
    ratio = max((1 + Fraction(1, p)) / (1 + b), p * b / (1 + b))
    return MinMinRatio("DNF", ratio, True, "max{(1+1/p)/(1+b), pb/(1+b)}")


def minmin_ratio_dhk(spec: IntervalSpec) -> MinMinRatio:
    """Dual Harmonic has min/min ratio 1 on every interval."""
    formula = "unrestricted" if spec.is_unrestricted else ("single-size worst case" if spec.has_border else "no border")
    return MinMinRatio("DHk", ONE, spec.has_border, formula)


def minmin_ratios(spec: IntervalSpec) -> tuple[MinMinRatio, MinMinRatio]:
    return minmin_ratio_dnf(spec), minmin_ratio_dhk(spec)


class BoundKind(str, Enum):
    EXACT = "exact"
    UPPER = "upper_bound"
    LOWER = "lower_bound"


@dataclass(frozen=True)
class TableEntry:
    algorithm: str
    ratio: Fraction
    kind: BoundKind
    min_k: int | None = None
    note: str = ""


@dataclass(frozen=True)
class CompetitiveTable:
    spec: IntervalSpec
    case: BorderCase
    entries: tuple[TableEntry, ...]

    def entry(self, algorithm: str) -> TableEntry:
        return next(e for e in self.entries if e.algorithm == algorithm)

    @property
    def dhk_better(self) -> bool:
        return self.entry("DHk").ratio > self.entry("DNF").ratio

    def to_model(self) -> CompetitiveTableSchema:
        return CompetitiveTableSchema(
            a=format_rational(self.spec.a),
            b=format_rational(self.spec.b),
            p=self.spec.p,
            case=self.case.value,
            entries=[
                TableEntrySchema(
                    algorithm=e.algorithm, ratio=format_rational(e.ratio), kind=e.kind.value, min_k=e.min_k, note=e.note
                )
                for e in self.entries
            ],
            dhk_better=self.dhk_better,
        )


def two_border_threshold(p: int) -> Fraction:
    """(p+2)/(p(p+1)), the point where a medium and a large item reach 2/p with 1/(p+1)."""
    return Fraction(p + 2, p * (p + 1))


def competitive_table(spec: IntervalSpec) -> CompetitiveTable:
    """
    Competitive ratios of both algorithms on a one- or two-border interval.

    Raises:
        NoBorder: (a, b) holds no border
        UnsupportedInterval: (a, b) holds more than two borders
    """
    case = spec.case
    p, b = spec.p, spec.b
    if case is BorderCase.NONE:
        raise NoBorder(f"{spec} contains no harmonic border; DHk packs as DNF")
    if case is BorderCase.MORE:
        raise UnsupportedInterval(f"{spec} contains more than two harmonic borders")

    if case is BorderCase.ONE:
        dnf = TableEntry("DNF", Fraction(p, p + 1), BoundKind.EXACT, note="p/(p+1)")
        dhk = TableEntry("DHk", Fraction(p * p + 1, p * (p + 1)), BoundKind.EXACT, p, "(p²+1)/(p(p+1))")
    elif b <= two_border_threshold(p):
        dnf = TableEntry("DNF", Fraction(p + 1, p + 2), BoundKind.UPPER, note="(p+1)/(p+2)")
        dhk = TableEntry(
            "DHk",
            Fraction(p**3 + 2 * p**2 + p + 2, p * (p + 1) * (p + 2)),
            BoundKind.EXACT,
            p + 1,
            "(p³+2p²+p+2)/(p(p+1)(p+2))",
        )
    else:
        dnf = TableEntry("DNF", Fraction(p * p + p, p * p + 2 * p + 2), BoundKind.UPPER, note="(p²+p)/(p²+2p+2)")
        dhk = TableEntry(
            "DHk",
            Fraction(p**3 + 2 * p**2 + 2, p * (p + 1) * (p + 2)),
            BoundKind.EXACT,
            p + 1,
            "(p³+2p²+2)/(p(p+1)(p+2))",
        )
    reasonable = TableEntry("reasonable", HALF, BoundKind.LOWER, note="closes bins as soon as covered")
    table = CompetitiveTable(spec, case, (dnf, dhk, reasonable))
    logger.debug(f"Competitive table for {spec} (p={p}, {case.value}): DNF {dnf.ratio}, DHk {dhk.ratio}")
    return table
