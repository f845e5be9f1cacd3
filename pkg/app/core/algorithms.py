"""Dual Next-Fit and Dual Harmonic, as incremental packers and as traced runs."""

import logging
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence as SequenceABC

import numpy as np

from app.core.items import ONE, ZERO, ItemSize, ScaledSequence, Sequence
from app.core.packing import Action, PackingTrace, TraceEvent
from app.exceptions import BadParams
from app.models.schemas import TraceEventSchema, TraceSchema

logger = logging.getLogger(__name__)

# Any ordered numeric type works as an item: Fraction on the exact path, int
# on the scaled path (capacity = common denominator), float on Monte Carlo.
Number = Fraction | int | float


class AlgorithmId(str, Enum):
    DNF = "dnf"
    DHK = "dhk"


@dataclass(frozen=True)
class HarmonicConfig:
    """Number of harmonic classes; k = 1 makes Dual Harmonic act as Dual Next-Fit."""

    k: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise BadParams(f"k must be ≥ 1, got {self.k}")


@dataclass(frozen=True)
class IntervalIndex:
    """
    Harmonic class of an item.

    j = 1 is the small class (0, 1/k); j in [2, k] is [1/j, 1/(j-1)).
    """

    j: int
    k: int

    @property
    def lower(self) -> Fraction:
        return ZERO if self.j == 1 else Fraction(1, self.j)

    @property
    def upper(self) -> Fraction:
        if self.j == 1:
            return Fraction(1, self.k)
        return ONE if self.j == 2 else Fraction(1, self.j - 1)

    @property
    def is_small(self) -> bool:
        return self.j == 1

    def contains(self, item: Fraction) -> bool:
        if self.is_small:
            return ZERO < item < self.upper
        return self.lower <= item < self.upper

    def __str__(self) -> str:
        if self.is_small:
            return f"(0,{self.upper})"
        return f"[{self.lower},{self.upper})"


def harmonic_class(item: Number, k: int, capacity: Number = ONE) -> int:
    """
    Class index of an item: ceil(capacity/item) if at most k, else 1.

    Borders are left-closed: an item of size exactly 1/j lands in [1/j, 1/(j-1)).
    """
    j = -(-capacity // item)
    j = int(j)
    return j if j <= k else 1


def harmonic_interval(item: ItemSize, cfg: HarmonicConfig) -> IntervalIndex:
    return IntervalIndex(harmonic_class(item, cfg.k), cfg.k)


class Packer(ABC):
    """
    Online covering algorithm fed one item at a time.

    With `record=True` every open/place/close is logged so `trace()` can
    rebuild the run; without it the packer only counts, which is what the
    search and sampling loops need.
    """

    alg_id: AlgorithmId
    max_open: int

    def __init__(self, capacity: Number = ONE, record: bool = False):
        self.capacity = capacity
        self.record = record
        self.covered = 0
        self._placed = 0
        self._next_bin = 0
        self._events: list[TraceEvent] = []
        self._items: list = []

    @abstractmethod
    def place(self, item: Number) -> None: ...

    @property
    @abstractmethod
    def open_volume(self) -> Number: ...

    @property
    @abstractmethod
    def open_bins(self) -> int: ...

    @abstractmethod
    def copy(self) -> "Packer": ...

    @abstractmethod
    def state_key(self) -> tuple:
        """Hashable summary of everything that decides future closes."""

    def feed(self, items: Iterable[Number]) -> "Packer":
        for item in items:
            self.place(item)
        return self

    def trace(self) -> PackingTrace:
        if not self.record:
            raise RuntimeError("trace() needs a packer built with record=True")
        return PackingTrace.from_events(self._items, self._events)

    def _begin(self, item: Number) -> int:
        index = self._placed
        self._placed += 1
        if self.record:
            self._items.append(item)
        return index

    def _open(self, index: int) -> int:
        bin_id = self._next_bin
        self._next_bin += 1
        self._log(index, bin_id, Action.OPEN)
        return bin_id

    def _log(self, index: int, bin_id: int, action: Action) -> None:
        if self.record:
            self._events.append(TraceEvent(index, bin_id, action))

    def _copy_base(self, other: "Packer") -> None:
        other.covered = self.covered
        other._placed = self._placed
        other._next_bin = self._next_bin
        if self.record:
            other._events = list(self._events)
            other._items = list(self._items)


class DualNextFit(Packer):
    """One open bin; every item goes there; close at sum ≥ capacity."""

    alg_id = AlgorithmId.DNF
    max_open = 1

    def __init__(self, capacity: Number = ONE, record: bool = False):
        super().__init__(capacity, record)
        self._bin: int | None = None
        self._sum: Number = 0

    def place(self, item: Number) -> None:
        index = self._begin(item)
        if self._bin is None:
            self._bin = self._open(index)
        self._sum += item
        self._log(index, self._bin, Action.PLACE)
        if self._sum >= self.capacity:
            self._log(index, self._bin, Action.CLOSE)
            self.covered += 1
            self._bin = None
            self._sum = 0

    @property
    def open_volume(self) -> Number:
        return self._sum

    @property
    def open_bins(self) -> int:
        return 0 if self._bin is None else 1

    def state_key(self) -> tuple:
        return (self._sum,)

    def copy(self) -> "DualNextFit":
        other = DualNextFit(self.capacity, self.record)
        self._copy_base(other)
        other._bin = self._bin
        other._sum = self._sum
        return other


class DualHarmonic(Packer):
    """
    One open bin per harmonic class.

    A bin of class [1/j, 1/(j-1)) closes after exactly j items. The small class
    (0, 1/k) runs Next-Fit, so k = 1 reproduces Dual Next-Fit event for event.
    """

    alg_id = AlgorithmId.DHK

    def __init__(self, k: int = 2, capacity: Number = ONE, record: bool = False):
        super().__init__(capacity, record)
        self.k = HarmonicConfig(k).k
        self.max_open = self.k
        # class -> [bin id, item count, sum]
        self._open_by_class: dict[int, list] = {}

    def place(self, item: Number) -> None:
        index = self._begin(item)
        j = harmonic_class(item, self.k, self.capacity)
        state = self._open_by_class.get(j)
        if state is None:
            state = [self._open(index), 0, 0]
            self._open_by_class[j] = state
        state[1] += 1
        state[2] += item
        self._log(index, state[0], Action.PLACE)
        full = state[2] >= self.capacity if j == 1 else state[1] == j
        if full:
            self._log(index, state[0], Action.CLOSE)
            self.covered += 1
            del self._open_by_class[j]

    @property
    def open_volume(self) -> Number:
        return sum((s[2] for s in self._open_by_class.values()), 0)

    @property
    def open_bins(self) -> int:
        return len(self._open_by_class)

    def state_key(self) -> tuple:
        return tuple(sorted((j, s[1], s[2]) for j, s in self._open_by_class.items()))

    def copy(self) -> "DualHarmonic":
        other = DualHarmonic(self.k, self.capacity, self.record)
        self._copy_base(other)
        other._open_by_class = {j: list(s) for j, s in self._open_by_class.items()}
        return other


def get_algorithm(alg_id: AlgorithmId | str, k: int | None = None, **kwargs) -> Packer:
    """Build a fresh packer for an algorithm id."""
    alg_id = AlgorithmId(alg_id)
    if alg_id is AlgorithmId.DNF:
        return DualNextFit(**kwargs)
    return DualHarmonic(k if k is not None else 2, **kwargs)


def algorithm_label(alg_id: AlgorithmId | str, k: int | None = None) -> str:
    alg_id = AlgorithmId(alg_id)
    return "DNF" if alg_id is AlgorithmId.DNF else f"DH{k if k is not None else 2}"


def dnf_run(seq: Sequence) -> PackingTrace:
    """Run Dual Next-Fit on a sequence and return its trace."""
    return DualNextFit(record=True).feed(seq).trace()


def dhk_run(seq: Sequence, cfg: HarmonicConfig) -> PackingTrace:
    """Run Dual Harmonic with `cfg.k` classes and return its trace."""
    return DualHarmonic(cfg.k, record=True).feed(seq).trace()


def run_algorithm(alg_id: AlgorithmId | str, seq: Sequence, k: int | None = None) -> PackingTrace:
    return get_algorithm(alg_id, k, record=True).feed(seq).trace()


def covered_count(alg_id: AlgorithmId | str, seq: Sequence, k: int | None = None) -> int:
    """Covered bins of one run, exact, without building a trace."""
    scaled = ScaledSequence.from_sequence(seq)
    if AlgorithmId(alg_id) is AlgorithmId.DNF:
        return dnf_count_scaled(scaled.sizes, scaled.capacity)
    return dhk_count_scaled(scaled.sizes, scaled.capacity, k if k is not None else 2)


# Fast paths


def dnf_count_scaled(sizes: SequenceABC[int], capacity: int) -> int:
    covered = 0
    level = 0
    for size in sizes:
        level += size
        if level >= capacity:
            covered += 1
            level = 0
    return covered


def harmonic_split(sizes: SequenceABC[Number], k: int, capacity: Number = ONE) -> tuple[Counter, list]:
    """Per-class counts of the bordered classes and the small-class items in order."""
    bordered: Counter = Counter()
    small = []
    for size in sizes:
        j = harmonic_class(size, k, capacity)
        if j == 1:
            small.append(size)
        else:
            bordered[j] += 1
    return bordered, small


def bordered_covered(bordered: Counter) -> int:
    return sum(count // j for j, count in bordered.items())


def dhk_count_scaled(sizes: SequenceABC[int], capacity: int, k: int) -> int:
    bordered, small = harmonic_split(sizes, k, capacity)
    return bordered_covered(bordered) + dnf_count_scaled(small, capacity)


def dnf_count_float(sizes: np.ndarray) -> int:
    """Approximate Dual Next-Fit count on float sizes."""
    covered = 0
    level = 0.0
    for size in sizes.tolist():
        level += size
        if level >= 1.0:
            covered += 1
            level = 0.0
    return covered


def dhk_count_float(sizes: np.ndarray, k: int) -> int:
    """Approximate Dual Harmonic count on float sizes."""
    k = HarmonicConfig(k).k
    classes = np.ceil(1.0 / sizes).astype(np.int64)
    bordered = classes[classes <= k]
    counts = np.bincount(bordered, minlength=k + 1)
    total = sum(int(counts[j]) // j for j in range(2, k + 1))
    return total + dnf_count_float(sizes[classes > k])


def is_order_independent(seq: Sequence, k: int) -> bool:
    """
    Sufficient test that every ordering of `seq` gives Dual Harmonic the same count.

    Bordered classes count floor(n_j / j) in any order. The small class runs
    Next-Fit, whose count is fixed only when its volume is below 2 or all its
    items are equal.
    """
    _, small = harmonic_split(seq.items, k)
    return sum(small, ZERO) < 2 or len(set(small)) <= 1


def trace_to_model(trace: PackingTrace) -> TraceSchema:
    return TraceSchema(
        events=[TraceEventSchema(item=e.item, bin=e.bin, action=e.action.value) for e in trace.events],
        covered=trace.covered,
    )


def trace_from_model(model: TraceSchema, items: SequenceABC[ItemSize]) -> PackingTrace:
    """Rebuild a trace over `items` from its serialised events."""
    events = [TraceEvent(e.item, e.bin, Action(e.action)) for e in model.events]
    return PackingTrace.from_events(items, events)
