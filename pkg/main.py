"""Entry point: `python main.py <command> [options]`, same as the `bincover` script."""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
