import logging
import sys

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(debug: bool = False) -> None:
    """Send log records to the current stderr; stdout carries reports only.

    Reconfigures on every call so repeated in-process dispatches pick up a
    replaced `sys.stderr`.
    """
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
    # numpy and pandas report through `warnings`
    logging.captureWarnings(True)
