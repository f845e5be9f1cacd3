from collections import Counter
from fractions import Fraction

import pytest

from app.core.items import (
    ScaledSequence,
    Sequence,
    distinct_orderings,
    format_rational,
    make_item,
    parse_item,
    parse_sequence,
    read_sequence,
    volume,
    write_sequence,
)
from app.exceptions import InvalidItem, SequenceFormatError


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1/3", Fraction(1, 3)),
        ("0.25", Fraction(1, 4)),
        ("2.5e-1", Fraction(1, 4)),
        (" 7/10 ", Fraction(7, 10)),
    ],
)
def test_parse_item_is_exact(text, expected):
    assert parse_item(text) == expected


@pytest.mark.parametrize("text", ["0", "1", "3/2", "-1/4"])
def test_parse_item_rejects_sizes_outside_unit_interval(text):
    with pytest.raises(InvalidItem):
        parse_item(text)


def test_parse_item_rejects_garbage():
    with pytest.raises(SequenceFormatError):
        parse_item("half")


def test_make_item_refuses_floats():
    with pytest.raises(InvalidItem):
        make_item(0.5)


def test_parse_sequence_skips_comments_and_reads_provenance():
    text = "# bincover v1\n# provenance: hand made\n1/2\n\n0.25  # trailing comment\n1/4\n"
    seq = parse_sequence(text)
    assert seq.items == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    assert seq.provenance == "hand made"


def test_parse_sequence_reports_line_number():
    with pytest.raises(SequenceFormatError, match="line 3"):
        parse_sequence("1/2\n1/3\n5/4\n")


def test_file_keeps_items_and_provenance(tmp_path):
    seq = Sequence.of("1/2", "1/3", "1/6", provenance="unit test")
    path = write_sequence(seq, tmp_path / "s.txt")
    assert path.read_text().startswith("# bincover v1\n# provenance: unit test\n")
    again = read_sequence(path)
    assert again == seq


def test_read_sequence_missing_file(tmp_path):
    with pytest.raises(SequenceFormatError):
        read_sequence(tmp_path / "missing.txt")


def test_volume_and_format():
    seq = Sequence.of("1/2", "1/3", "1/6", "1/4")
    assert volume(seq) == Fraction(5, 4)
    assert volume(Sequence()) == 0
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(3, 6)) == "1/2"


def test_distinct_orderings_visits_each_arrangement_once():
    orders = list(distinct_orderings([1, 1, 2, 3]))
    assert len(orders) == 12
    assert len(set(orders)) == 12
    assert all(Counter(o) == Counter([1, 1, 2, 3]) for o in orders)


def test_scaled_sequence_uses_least_common_denominator():
    scaled = ScaledSequence.from_sequence(Sequence.of("1/2", "1/3", "1/4"))
    assert scaled.capacity == 12
    assert scaled.sizes == (6, 4, 3)


def test_sorted_and_permuted():
    seq = Sequence.of("1/3", "1/2", "1/6")
    assert seq.sorted().items == (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2))
    assert seq.permuted([2, 0, 1]).items == (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2))
    with pytest.raises(ValueError):
        seq.permuted([0, 0, 1])
