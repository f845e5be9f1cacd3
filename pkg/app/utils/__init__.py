from .logging import setup_logging
