"""One module per subcommand; each exposes `register` and `handle`."""

from . import analytic, generate, minmin, random_order, report, run, schemas, table, uniform, verify, worst_order

COMMANDS = (run, generate, worst_order, random_order, minmin, uniform, analytic, table, report, verify, schemas)

__all__ = ["COMMANDS"]
