from .schemas import (
    AnalyticReport,
    AnalyticRow,
    CertificateSchema,
    ClaimSchema,
    CompetitiveTableSchema,
    Envelope,
    ErrorResponse,
    EstimateSchema,
    ExpectationSchema,
    ExperimentReportSchema,
    FamilySchema,
    MeasureReport,
    MinMinReport,
    MinMinSchema,
    RunReport,
    SchemaIndex,
    SegmentSchema,
    TableEntrySchema,
    TraceEventSchema,
    TraceSchema,
    VerifyReport,
)
