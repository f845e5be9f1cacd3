"""Packings, packing traces and their verification."""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from app.core.items import ONE, ItemSize, Sequence, make_item, volume
from app.exceptions import BadParams, MalformedTrace, MultisetMismatch

logger = logging.getLogger(__name__)


class BinStatus(str, Enum):
    OPEN = "open"
    CLOSED = "closed"


class Action(str, Enum):
    OPEN = "open"
    PLACE = "place"
    CLOSE = "close"


@dataclass(frozen=True)
class Bin:
    """Contents of one bin in placement order."""

    items: tuple[ItemSize, ...]
    status: BinStatus = BinStatus.CLOSED

    @property
    def total(self) -> Fraction:
        return volume(self.items)

    @property
    def covered(self) -> bool:
        # closed condition: exactly 1 counts
        return self.total >= ONE


@dataclass(frozen=True)
class Packing:
    """Bins in opening order."""

    bins: tuple[Bin, ...] = ()

    @classmethod
    def of(cls, groups: Iterable[Iterable[Fraction | int | str]], status: BinStatus = BinStatus.CLOSED) -> "Packing":
        """Packing from groups of item values; each value must lie in (0, 1)."""
        return cls(tuple(Bin(tuple(make_item(i) for i in g), status) for g in groups))

    @property
    def covered_count(self) -> int:
        return sum(1 for b in self.bins if b.status is BinStatus.CLOSED and b.covered)

    @property
    def open_bins(self) -> tuple[Bin, ...]:
        return tuple(b for b in self.bins if b.status is BinStatus.OPEN)

    def multiset(self) -> Counter:
        counts: Counter = Counter()
        for b in self.bins:
            counts.update(b.items)
        return counts


@dataclass(frozen=True)
class TraceEvent:
    item: int
    bin: int
    action: Action


@dataclass(frozen=True)
class PackingTrace:
    """
    Event log of one algorithm run.

    `items` is the processed sequence; `final` is derived from the events by
    replay, so the covered count can never drift from the log.
    """

    items: tuple[ItemSize, ...]
    events: tuple[TraceEvent, ...]
    final: Packing

    @classmethod
    def from_events(cls, items: Iterable[ItemSize], events: Iterable[TraceEvent]) -> "PackingTrace":
        items = tuple(items)
        events = tuple(events)
        return cls(items, events, replay(items, events))

    @property
    def covered(self) -> int:
        return self.final.covered_count


def replay(items: tuple[ItemSize, ...], events: tuple[TraceEvent, ...]) -> Packing:
    """
    Rebuild the packing an event log describes.

    Raises:
        MalformedTrace: place into an unopened or closed bin, a bin opened or
            closed twice, an item placed twice or never, unknown item index
    """
    contents: dict[int, list[ItemSize]] = {}
    closed: set[int] = set()
    placed: set[int] = set()

    for position, event in enumerate(events):
        where = f"event {position} ({event.action.value} item={event.item} bin={event.bin})"
        if not 0 <= event.item < len(items):
            raise MalformedTrace(f"{where}: unknown item index")
        if event.action is Action.OPEN:
            if event.bin in contents:
                raise MalformedTrace(f"{where}: bin opened twice")
            contents[event.bin] = []
        elif event.action is Action.PLACE:
            if event.bin not in contents:
                raise MalformedTrace(f"{where}: place into unopened bin")
            if event.bin in closed:
                raise MalformedTrace(f"{where}: place into closed bin")
            if event.item in placed:
                raise MalformedTrace(f"{where}: item placed twice")
            placed.add(event.item)
            contents[event.bin].append(items[event.item])
        else:
            if event.bin not in contents:
                raise MalformedTrace(f"{where}: close of unopened bin")
            if event.bin in closed:
                raise MalformedTrace(f"{where}: bin closed twice")
            closed.add(event.bin)

    if len(placed) != len(items):
        missing = sorted(set(range(len(items))) - placed)
        raise MalformedTrace(f"items never placed: {missing[:10]}")

    return Packing(
        tuple(
            Bin(tuple(contents[b]), BinStatus.CLOSED if b in closed else BinStatus.OPEN)
            for b in contents  # dicts keep opening order
        )
    )


def verify_packing(seq: Sequence, packing: Packing) -> int:
    """
    Recount covered bins of a packing from scratch.

    Args:
        seq: The input sequence
        packing: Proposed packing of exactly those items

    Returns:
        Number of bins whose exact sum is at least 1
    """
    if packing.multiset() != seq.multiset():
        raise MultisetMismatch(
            f"Packing holds {sum(packing.multiset().values())} items, "
            f"sequence has {len(seq)}; multisets differ"
        )
    return sum(1 for b in packing.bins if b.covered)


class ViolationKind(str, Enum):
    LATE_CLOSE = "late_close"  # covered bin not closed by the next event
    EARLY_CLOSE = "early_close"  # bin closed below 1
    TOO_MANY_OPEN = "too_many_open"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    event_index: int
    bin: int
    message: str


@dataclass(frozen=True)
class ReasonableVerdict:
    ok: bool
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_reasonable(trace: PackingTrace, max_open: int) -> ReasonableVerdict:
    """
    Check the reasonable-algorithm rules against a trace.

    A reasonable algorithm closes a bin by the event right after its sum first
    reaches 1, never closes a bin below 1 and never holds more than
    `max_open` open bins.
    """
    if max_open < 1:
        raise BadParams(f"max_open must be ≥ 1, got {max_open}")
    replay(trace.items, trace.events)

    sums: dict[int, Fraction] = {}
    open_now = 0
    pending: tuple[int, int] | None = None  # (bin, event index) awaiting close

    for position, event in enumerate(trace.events):
        if pending is not None:
            bin_id, at = pending
            if not (event.action is Action.CLOSE and event.bin == bin_id):
                return ReasonableVerdict(
                    False,
                    Violation(
                        ViolationKind.LATE_CLOSE, at, bin_id, f"bin {bin_id} covered at event {at} but left open"
                    ),
                )
            pending = None

        if event.action is Action.OPEN:
            sums[event.bin] = Fraction(0)
            open_now += 1
            if open_now > max_open:
                return ReasonableVerdict(
                    False,
                    Violation(
                        ViolationKind.TOO_MANY_OPEN,
                        position,
                        event.bin,
                        f"{open_now} open bins exceed the limit {max_open}",
                    ),
                )
        elif event.action is Action.PLACE:
            before = sums[event.bin]
            sums[event.bin] = before + trace.items[event.item]
            if before < ONE <= sums[event.bin]:
                pending = (event.bin, position)
        else:
            if sums[event.bin] < ONE:
                return ReasonableVerdict(
                    False,
                    Violation(
                        ViolationKind.EARLY_CLOSE,
                        position,
                        event.bin,
                        f"bin {event.bin} closed at sum {sums[event.bin]}",
                    ),
                )
            open_now -= 1

    if pending is not None:
        bin_id, at = pending
        return ReasonableVerdict(
            False,
            Violation(ViolationKind.LATE_CLOSE, at, bin_id, f"bin {bin_id} covered at event {at} but never closed"),
        )
    return ReasonableVerdict(True)
