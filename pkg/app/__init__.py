"""Online bin covering laboratory.

Dual Next-Fit and Dual Harmonic, exact OPT oracles, adversarial families and
evaluators for the competitive, relative worst order, random order, min/min
and uniform-distribution measures.
"""

__version__ = "0.1.0"

# Config
from app.config import Settings, get_settings

# Core services
from app.core import (
    AlgorithmId,
    DualHarmonic,
    DualNextFit,
    IntervalSpec,
    Sequence,
    competitive_table,
    covered_count,
    opt_exact,
    worst_order_value,
)

# Exceptions
from app.exceptions import BinCoverError, handle_error

# Models
from app.models import Envelope, ErrorResponse, ExperimentReportSchema, MeasureReport, RunReport

# Utils
from app.utils import setup_logging

__all__ = [
    # Version
    "__version__",
    # Config
    "Settings",
    "get_settings",
    # Core
    "AlgorithmId",
    "DualNextFit",
    "DualHarmonic",
    "Sequence",
    "IntervalSpec",
    "covered_count",
    "opt_exact",
    "worst_order_value",
    "competitive_table",
    # Models
    "Envelope",
    "ErrorResponse",
    "RunReport",
    "MeasureReport",
    "ExperimentReportSchema",
    # Exceptions
    "BinCoverError",
    "handle_error",
    # Utils
    "setup_logging",
]
