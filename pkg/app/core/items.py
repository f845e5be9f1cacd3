"""Item sizes, sequences and the v1 sequence file format."""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Hashable, Iterable, Iterator, Sequence as SequenceABC

import numpy as np

from app.exceptions import InvalidItem, SequenceFormatError

logger = logging.getLogger(__name__)

FORMAT_HEADER = "# bincover v1"
PROVENANCE_PREFIX = "# provenance:"

ZERO = Fraction(0)
ONE = Fraction(1)

# Exact rational in (0, 1); Fraction keeps lowest terms and a positive denominator.
ItemSize = Fraction


def make_item(value: Fraction | int | str) -> ItemSize:
    """
    Convert a value to an exact item size.

    Floats are refused: their binary expansion is rarely the intended size.
    Use `parse_item` for text and `Fraction.from_float` when the binary value
    is wanted on purpose.
    """
    if isinstance(value, float):
        raise InvalidItem(f"Float item {value!r}: pass a Fraction or a 'num/den' string")
    item = value if isinstance(value, Fraction) else Fraction(value)
    if not ZERO < item < ONE:
        raise InvalidItem(f"Item size {item} outside (0, 1)")
    return item


def parse_item(text: str) -> ItemSize:
    """Parse `num/den` or a decimal literal, read exactly in base 10."""
    token = text.strip()
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError) as e:
        raise SequenceFormatError(f"Cannot read item '{token}': {e}")
    return make_item(value)


@dataclass(frozen=True)
class Sequence:
    """An ordered, immutable list of item sizes."""

    items: tuple[ItemSize, ...] = ()
    provenance: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(make_item(i) for i in self.items))

    @classmethod
    def of(cls, *items: Fraction | int | str, provenance: str | None = None) -> "Sequence":
        return cls(tuple(items), provenance)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[ItemSize]:
        return iter(self.items)

    def __getitem__(self, index: int) -> ItemSize:
        return self.items[index]

    def multiset(self) -> Counter:
        return Counter(self.items)

    def sorted(self, descending: bool = False) -> "Sequence":
        """Canonical multiset view."""
        return Sequence(tuple(sorted(self.items, reverse=descending)), self.provenance)

    def permuted(self, order: SequenceABC[int]) -> "Sequence":
        """Sequence with items taken in the given index order."""
        if sorted(order) != list(range(len(self.items))):
            raise ValueError("order is not a permutation of the item indices")
        return Sequence(tuple(self.items[i] for i in order), self.provenance)

    def __add__(self, other: "Sequence") -> "Sequence":
        return Sequence(self.items + other.items, self.provenance)

    def as_floats(self) -> np.ndarray:
        """Approximate float64 image of the items."""
        return np.array([float(i) for i in self.items], dtype=np.float64)


def format_rational(value: Fraction | int) -> str:
    """`num/den`, or a bare integer when the denominator is 1."""
    return str(Fraction(value))


def volume(seq: Iterable[ItemSize]) -> Fraction:
    """Exact sum of item sizes; 0 for the empty sequence."""
    return sum(seq, ZERO)


def distinct_orderings(values: Iterable[Hashable]) -> Iterator[tuple]:
    """Every distinct ordering of a multiset, each exactly once."""
    counts = Counter(values)
    keys = sorted(counts)
    total = sum(counts.values())
    prefix: list = []

    def extend() -> Iterator[tuple]:
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for key in keys:
            if counts[key]:
                counts[key] -= 1
                prefix.append(key)
                yield from extend()
                prefix.pop()
                counts[key] += 1

    yield from extend()


@dataclass(frozen=True)
class ScaledSequence:
    """
    Integer image of a rational sequence over the least common denominator.

    A bin holding scaled sizes is covered iff their sum reaches `capacity`, so
    exact comparisons run on machine-friendly ints.
    """

    sizes: tuple[int, ...]
    capacity: int
    source: Sequence = field(repr=False, compare=False, default_factory=Sequence)

    @classmethod
    def from_sequence(cls, seq: Sequence) -> "ScaledSequence":
        capacity = math.lcm(*(i.denominator for i in seq.items)) if seq.items else 1
        sizes = tuple(i.numerator * (capacity // i.denominator) for i in seq.items)
        return cls(sizes, capacity, seq)

    def __len__(self) -> int:
        return len(self.sizes)


def parse_sequence(text: str, provenance: str | None = None) -> Sequence:
    """
    Parse the v1 text format.

    One item per line; blank lines and `#` comments are ignored. A
    `# provenance:` comment, when present, becomes the sequence provenance.
    """
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(PROVENANCE_PREFIX) and provenance is None:
            provenance = line[len(PROVENANCE_PREFIX) :].strip() or None
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            items.append(parse_item(line))
        except (SequenceFormatError, InvalidItem) as e:
            raise SequenceFormatError(f"line {lineno}: {e.detail}")
    return Sequence(tuple(items), provenance)


def format_sequence(seq: Sequence) -> str:
    lines = [FORMAT_HEADER]
    if seq.provenance:
        lines.append(f"{PROVENANCE_PREFIX} {seq.provenance}")
    lines.extend(f"{i.numerator}/{i.denominator}" for i in seq.items)
    return "\n".join(lines) + "\n"


def read_sequence(path: str | Path) -> Sequence:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SequenceFormatError(f"Cannot read {path}: {e}")
    seq = parse_sequence(text)
    logger.info(f"Read {len(seq)} items from '{path}'")
    return seq


def write_sequence(seq: Sequence, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_sequence(seq), encoding="utf-8")
    logger.info(f"Wrote {len(seq)} items to '{path}'")
    return path
