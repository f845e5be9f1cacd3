from typing import Any, Optional

from pydantic import BaseModel, Field

# Rational values travel as strings: "num/den" (or an integer) in exact mode,
# a 12-significant-digit decimal in float mode. Floats are Monte Carlo output.


class ErrorResponse(BaseModel):
    """Error response schema."""

    error: str
    detail: Optional[str] = None
    exit_code: int = 2


class TraceEventSchema(BaseModel):
    item: int = Field(..., ge=0, description="Index of the item in the input sequence")
    bin: int = Field(..., ge=0)
    action: str = Field(..., pattern="^(open|place|close)$")


class TraceSchema(BaseModel):
    """Event log of one online run."""

    events: list[TraceEventSchema] = Field(default_factory=list)
    covered: int


class CertificateSchema(BaseModel):
    """Grouping of items witnessing a lower bound on OPT."""

    groups: list[list[str]] = Field(default_factory=list)
    claimed: int


class ClaimSchema(BaseModel):
    subject: str
    expected: int
    kind: str
    slack: int = 0
    observed: Optional[int] = None


class SegmentSchema(BaseModel):
    label: str
    start: int
    stop: int


class FamilySchema(BaseModel):
    """A generated family with its claims and certificate."""

    family: str
    params: dict[str, str] = Field(default_factory=dict)
    eps: Optional[str] = None
    scale_n: int
    length: int
    provenance: str = ""
    interval: Optional[list[str]] = None
    claims: list[ClaimSchema] = Field(default_factory=list)
    certificate: Optional[CertificateSchema] = None
    segments: list[SegmentSchema] = Field(default_factory=list)
    files: list[str] = Field(default_factory=list)


class EstimateSchema(BaseModel):
    """Sampled mean with a 95% normal-approximation interval."""

    point: float
    ci: list[float] = Field(..., min_length=2, max_length=2)
    samples: int = Field(..., ge=1)
    seed: int
    std: float = 0.0
    opt: Optional[int] = None
    ratio: Optional[list[float]] = Field(default=None, description="[low, point, high] divided by opt")
    coverage_fraction: Optional[float] = None
    label: str = "mean covered bins"
    approximate: bool = False


class RunReport(BaseModel):
    """One algorithm run on one sequence."""

    algorithm: str
    k: Optional[int] = None
    length: int
    volume: str
    covered: int
    provenance: str = ""
    trace: Optional[TraceSchema] = None


class MeasureReport(BaseModel):
    """Result of a measure evaluation: an exact value or an estimate."""

    measure: str
    algorithm: str
    params: dict[str, str] = Field(default_factory=dict)
    value: Optional[str] = None
    estimate: Optional[EstimateSchema] = None
    exact: bool
    opt: Optional[str] = None
    ratio: Optional[str] = None
    witness: Optional[list[str]] = None
    label: Optional[str] = None
    nodes: Optional[int] = None
    notes: list[str] = Field(default_factory=list)


class MinMinSchema(BaseModel):
    algorithm: str
    ratio: str
    has_border: bool
    formula: str


class MinMinReport(BaseModel):
    """Min/min ratios of both algorithms on one interval."""

    a: str
    b: str
    p: int
    ratios: list[MinMinSchema] = Field(default_factory=list)


class TableEntrySchema(BaseModel):
    algorithm: str
    ratio: str
    kind: str
    min_k: Optional[int] = None
    note: str = ""


class CompetitiveTableSchema(BaseModel):
    """Competitive ratios on a restricted interval."""

    a: str
    b: str
    p: int
    case: str
    entries: list[TableEntrySchema] = Field(default_factory=list)
    dhk_better: bool


class AnalyticRow(BaseModel):
    """Expected-ratio decomposition for one k under uniform sizes."""

    k: int
    r_large: str
    r_small: str
    total: str
    reference: str
    error_bound: Optional[str] = None


class AnalyticReport(BaseModel):
    rows: list[AnalyticRow] = Field(default_factory=list)
    eru_dnf: str
    eru_limit: str


class ExpectationSchema(BaseModel):
    """One pass/fail line, with the source of the expected value."""

    name: str
    expected: str
    observed: str
    tolerance: Optional[str] = None
    source: str
    passed: bool


class ExperimentReportSchema(BaseModel):
    """Full experiment report: parameters, per-run records and verdicts."""

    name: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    records: list[dict[str, Any]] = Field(default_factory=list)
    summary: dict[str, Any] = Field(default_factory=dict)
    expectations: list[ExpectationSchema] = Field(default_factory=list)
    passed: bool
    wall_clock: Optional[float] = None


class VerifyReport(BaseModel):
    """Outcome of checking a packing or a certificate against a sequence."""

    kind: str
    covered: int
    ok: bool
    detail: str = ""


class SchemaIndex(BaseModel):
    directory: str
    files: list[str] = Field(default_factory=list)


class Envelope(BaseModel):
    """Header wrapped around every report written to standard output."""

    command: str
    mode: str = Field(..., pattern="^(exact|float)$")
    version: str
    report: Any
