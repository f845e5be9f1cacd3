import io
import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from app.cli import dispatch
from app.core.items import Sequence, write_sequence

# small sizes with a common denominator of 24
SIZES = tuple(Fraction(n, 24) for n in (1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 13, 16, 18, 20, 23))


def random_sequence(rng: np.random.Generator, length: int, sizes: tuple[Fraction, ...] = SIZES) -> Sequence:
    picks = rng.integers(0, len(sizes), size=length)
    return Sequence(tuple(sizes[i] for i in picks.tolist()))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def seq_file(tmp_path: Path):
    """Write a sequence to a file and return its path."""

    def _write(seq: Sequence, name: str = "seq.txt") -> Path:
        return write_sequence(seq, tmp_path / name)

    return _write


class CliRun:
    def __init__(self, code: int, out: str):
        self.code = code
        self.out = out

    @property
    def data(self) -> dict:
        return json.loads(self.out)

    @property
    def report(self) -> dict:
        return self.data["report"]


@pytest.fixture
def cli():
    """Run the command line in-process and capture standard output."""

    def _run(*argv: str) -> CliRun:
        stdout = io.StringIO()
        code = dispatch([str(a) for a in argv], stdout=stdout)
        return CliRun(code, stdout.getvalue())

    return _run
