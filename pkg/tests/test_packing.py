from fractions import Fraction

import pytest

from app.core.algorithms import AlgorithmId, covered_count, run_algorithm
from app.core.items import Sequence
from app.core.packing import (
    Action,
    BinStatus,
    Packing,
    PackingTrace,
    TraceEvent,
    ViolationKind,
    validate_reasonable,
    verify_packing,
)
from app.exceptions import BadParams, InvalidItem, MalformedTrace, MultisetMismatch

from .conftest import random_sequence

HALVES = Sequence.of("1/2", "1/2", "1/3")


def _events(*triples):
    return [TraceEvent(item, bin_id, Action(action)) for item, bin_id, action in triples]


def test_replay_rebuilds_bins_in_opening_order():
    trace = PackingTrace.from_events(
        HALVES.items,
        _events((0, 0, "open"), (0, 0, "place"), (1, 0, "place"), (1, 0, "close"), (2, 1, "open"), (2, 1, "place")),
    )
    assert trace.covered == 1
    assert [b.status for b in trace.final.bins] == [BinStatus.CLOSED, BinStatus.OPEN]
    assert trace.final.open_bins[0].items == (Fraction(1, 3),)


@pytest.mark.parametrize(
    "events, message",
    [
        ([(0, 0, "place")], "unopened"),
        ([(0, 0, "open"), (0, 0, "open")], "opened twice"),
        ([(0, 0, "open"), (0, 0, "place"), (0, 0, "place")], "placed twice"),
        ([(0, 0, "open"), (0, 0, "close"), (1, 0, "place")], "closed bin"),
        ([(5, 0, "open")], "unknown item"),
    ],
)
def test_replay_rejects_malformed_logs(events, message):
    with pytest.raises(MalformedTrace, match=message):
        PackingTrace.from_events(HALVES.items, _events(*events))


def test_replay_requires_every_item():
    with pytest.raises(MalformedTrace, match="never placed"):
        PackingTrace.from_events(HALVES.items, _events((0, 0, "open"), (0, 0, "place")))


def test_closed_bin_at_exactly_one_counts_as_covered():
    packing = Packing.of([["1/2", "1/2"], ["1/3"]])
    assert packing.covered_count == 1
    assert verify_packing(HALVES, packing) == 1


def test_verify_packing_rejects_other_items():
    with pytest.raises(MultisetMismatch):
        verify_packing(HALVES, Packing.of([["1/2", "1/2"]]))


def test_engines_produce_reasonable_traces():
    seq = Sequence.of("1/2", "1/3", "2/3", "1/4", "1/2", "3/4", "1/6", "1/6")
    assert validate_reasonable(run_algorithm("dnf", seq), 1)
    assert validate_reasonable(run_algorithm("dhk", seq, 3), 3)


def test_late_close_is_reported():
    trace = PackingTrace.from_events(
        HALVES.items,
        _events((0, 0, "open"), (0, 0, "place"), (1, 0, "place"), (2, 1, "open"), (2, 1, "place"), (1, 0, "close")),
    )
    verdict = validate_reasonable(trace, 2)
    assert not verdict
    assert verdict.violation.kind is ViolationKind.LATE_CLOSE


def test_early_close_is_reported():
    trace = PackingTrace.from_events(
        HALVES.items,
        _events(
            (0, 0, "open"), (0, 0, "place"), (0, 0, "close"), (1, 1, "open"), (1, 1, "place"), (2, 1, "place")
        ),
    )
    verdict = validate_reasonable(trace, 1)
    assert verdict.violation.kind is ViolationKind.EARLY_CLOSE


def test_too_many_open_bins():
    trace = PackingTrace.from_events(
        HALVES.items,
        _events((0, 0, "open"), (0, 0, "place"), (1, 1, "open"), (1, 1, "place"), (2, 2, "open"), (2, 2, "place")),
    )
    assert validate_reasonable(trace, 3)
    assert validate_reasonable(trace, 2).violation.kind is ViolationKind.TOO_MANY_OPEN


def test_max_open_must_be_positive():
    with pytest.raises(BadParams):
        validate_reasonable(run_algorithm("dnf", HALVES), 0)


@pytest.mark.parametrize("value", ["0", "1", "3/2", -1])
def test_packing_rejects_items_outside_unit_interval(value):
    with pytest.raises(InvalidItem):
        Packing.of([["1/2", value]])


def _final_packings_verify(rng, trials: int) -> None:
    for _ in range(trials):
        seq = random_sequence(rng, int(rng.integers(1, 31)))
        for alg, k in ((AlgorithmId.DNF, None), (AlgorithmId.DHK, 2), (AlgorithmId.DHK, 3), (AlgorithmId.DHK, 5)):
            trace = run_algorithm(alg, seq, k)
            assert verify_packing(seq, trace.final) == covered_count(alg, seq, k) == trace.covered, (seq, alg, k)


def test_final_packings_verify(rng):
    _final_packings_verify(rng, 1000)


@pytest.mark.slow
def test_final_packings_verify_many(rng):
    _final_packings_verify(rng, 10_000)
