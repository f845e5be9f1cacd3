import logging
import sys
from typing import TextIO

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_USAGE = 2


class BinCoverError(Exception):
    """Base class for every domain error raised by the laboratory."""

    exit_code: int = EXIT_USAGE

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    @property
    def error(self) -> str:
        return type(self).__name__


# core
class InvalidItem(BinCoverError):
    """Item size outside the open interval (0, 1)."""


class SequenceFormatError(BinCoverError):
    """Malformed line in a sequence file."""


class MultisetMismatch(BinCoverError):
    """Packing does not hold exactly the input items."""


class MalformedTrace(BinCoverError):
    """Trace breaks the event-ordering rules."""


# oracles
class InstanceTooLarge(BinCoverError):
    """Exact search ran out of its node budget."""


class EpsTooLarge(BinCoverError):
    """Two-size eps violates 0 < eps < 1/(l+s)."""


class NotSubMultiset(BinCoverError):
    """Certificate uses items the sequence does not contain."""


# generators
class BadEps(BinCoverError):
    """eps outside the range a construction needs."""


class BadP(BinCoverError):
    """Border index too small for a construction."""


class BadParams(BinCoverError):
    """Generator parameters outside their documented range."""


class ClaimMismatch(BinCoverError):
    """A generated family failed its own exact claims."""

    exit_code = EXIT_EXPECTATION


# measures
class BudgetExceeded(BinCoverError):
    """Exact worst-order enumeration ran out of its node budget."""


class OutOfInterval(BinCoverError):
    """Item outside the restriction interval."""


class NotIrreducible(BinCoverError):
    """Markov chain is not irreducible."""


class NoBorder(BinCoverError):
    """Restriction interval contains no harmonic border."""


class UnsupportedInterval(BinCoverError):
    """Restriction interval contains more than two harmonic borders."""


class BoundaryB(BinCoverError):
    """Upper endpoint equals 1/(p-1), where the min/min formula degenerates."""


# analytic
class PrecisionLoss(BinCoverError):
    """Cancellation exceeds the working precision budget."""


# experiments / cli
class MissingProvenance(BinCoverError):
    """An OPT value was supplied without oracle, certificate or citation."""


class ExpectationFailure(BinCoverError):
    """A declared expectation did not hold."""

    exit_code = EXIT_EXPECTATION


class UsageError(BinCoverError):
    """Bad command-line usage."""


def handle_error(exc: BinCoverError, stream: TextIO | None = None) -> int:
    """Report a domain error on stderr and return its exit status."""
    from app.models.schemas import ErrorResponse  # noqa: PLC0415

    stream = stream or sys.stderr
    logger.warning(f"{exc.error}: {exc.detail}")
    response = ErrorResponse(error=exc.error, detail=exc.detail, exit_code=exc.exit_code)
    stream.write(response.model_dump_json() + "\n")
    return exc.exit_code


def handle_unexpected(exc: Exception, stream: TextIO | None = None) -> int:
    """Handle unexpected exceptions."""
    from app.models.schemas import ErrorResponse  # noqa: PLC0415

    stream = stream or sys.stderr
    logger.exception(f"Unhandled exception: {exc}")
    response = ErrorResponse(error="Internal error", detail=str(exc), exit_code=EXIT_EXPECTATION)
    stream.write(response.model_dump_json() + "\n")
    return EXIT_EXPECTATION
