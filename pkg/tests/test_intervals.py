from fractions import Fraction

import pytest

from app.core.intervals import (
    BorderCase,
    BoundKind,
    IntervalSpec,
    competitive_table,
    minmin_ratio_dhk,
    minmin_ratio_dnf,
    size_profile,
    two_border_threshold,
)
from app.core.items import Sequence
from app.exceptions import BadParams, BoundaryB, NoBorder, OutOfInterval, UnsupportedInterval

F = Fraction


@pytest.mark.parametrize(
    "a, b, p, case",
    [
        (F(2, 5), F(3, 5), 2, BorderCase.ONE),
        (F(3, 10), F(2, 3), 2, BorderCase.TWO),
        (F(1, 5), F(9, 20), 3, BorderCase.TWO),
        (F(2, 5), F(1, 2), 3, BorderCase.NONE),
        (F(1, 10), F(1, 2), 3, BorderCase.MORE),
    ],
)
def test_interval_classification(a, b, p, case):
    spec = IntervalSpec.of(a, b)
    assert spec.p == p
    assert spec.case is case


def test_interval_bounds():
    with pytest.raises(BadParams):
        IntervalSpec.of(F(1, 2), F(1, 3))
    with pytest.raises(BadParams):
        IntervalSpec.of(0, 2)


def test_two_border_threshold():
    assert two_border_threshold(2) == F(2, 3)
    assert two_border_threshold(3) == F(5, 12)


@pytest.mark.parametrize(
    "a, b, dnf, dhk, dnf_kind",
    [
        (F(2, 5), F(3, 5), F(2, 3), F(5, 6), BoundKind.EXACT),
        (F(3, 10), F(2, 3), F(3, 4), F(5, 6), BoundKind.UPPER),
        (F(1, 5), F(9, 20), F(12, 17), F(47, 60), BoundKind.UPPER),
    ],
)
def test_competitive_table(a, b, dnf, dhk, dnf_kind):
    table = competitive_table(IntervalSpec.of(a, b))
    assert table.entry("DNF").ratio == dnf
    assert table.entry("DNF").kind is dnf_kind
    assert table.entry("DHk").ratio == dhk
    assert table.entry("reasonable").ratio == F(1, 2)
    assert table.dhk_better


def test_table_model():
    model = competitive_table(IntervalSpec.of(F(2, 5), F(3, 5))).to_model()
    assert model.case == "one_border"
    assert {e.algorithm: e.ratio for e in model.entries} == {"DNF": "2/3", "DHk": "5/6", "reasonable": "1/2"}
    assert model.entries[1].min_k == 2


def test_table_rejects_unsupported_intervals():
    with pytest.raises(NoBorder):
        competitive_table(IntervalSpec.of(F(2, 5), F(1, 2)))
    with pytest.raises(UnsupportedInterval):
        competitive_table(IntervalSpec.of(F(1, 10), F(1, 2)))


def test_minmin_dnf_ratio():
    assert minmin_ratio_dnf(IntervalSpec.of(0, F(3, 5))).ratio == F(15, 16)
    assert minmin_ratio_dnf(IntervalSpec.unrestricted()).ratio == 1


def test_minmin_without_border():
    ratio = minmin_ratio_dnf(IntervalSpec.of(F(2, 5), F(1, 2)))
    assert ratio.ratio == 1
    assert not ratio.has_border


def test_minmin_boundary_b():
    with pytest.raises(BoundaryB):
        minmin_ratio_dnf(IntervalSpec.of(0, F(1, 2)))


def test_minmin_dhk_is_one():
    for spec in (IntervalSpec.of(0, F(3, 5)), IntervalSpec.of(F(2, 5), F(1, 2)), IntervalSpec.unrestricted()):
        assert minmin_ratio_dhk(spec).ratio == 1


def test_size_profile():
    spec = IntervalSpec.of(F(1, 5), F(9, 20))
    profile = size_profile(Sequence.of("2/9", "1/4", "3/10", "1/3", "2/5"), spec)
    assert (profile.small, profile.medium, profile.large) == (1, 2, 2)
    assert profile.total == 5
    with pytest.raises(OutOfInterval):
        size_profile(Sequence.of("1/2"), spec)
