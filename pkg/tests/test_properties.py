"""Randomised checks of relations that hold on every input."""

from fractions import Fraction

import numpy as np
import pytest

from app.core.algorithms import (
    AlgorithmId,
    covered_count,
    dhk_count_scaled,
    dnf_count_scaled,
    is_order_independent,
)
from app.core.items import ScaledSequence, Sequence, distinct_orderings
from app.core.oracles import (
    greedy_pairing_lower_bound,
    opt_exact,
    opt_volume_bound,
    reasonable_lower_bound,
    verify_certificate,
)

from .conftest import SIZES, random_sequence


def _dhk_within_three_halves(rng: np.random.Generator, trials: int, max_length: int) -> None:
    for _ in range(trials):
        seq = random_sequence(rng, int(rng.integers(1, max_length + 1)))
        scaled = ScaledSequence.from_sequence(seq)
        dnf = dnf_count_scaled(scaled.sizes, scaled.capacity)
        for k in (2, 3, 5):
            dhk = dhk_count_scaled(scaled.sizes, scaled.capacity, k)
            assert 2 * dhk <= 3 * dnf + 2, (seq, k)


def test_dhk_within_three_halves_of_dnf(rng):
    _dhk_within_three_halves(rng, 2000, 40)


@pytest.mark.slow
def test_dhk_within_three_halves_of_dnf_many(rng):
    _dhk_within_three_halves(rng, 100_000, 60)


def _exhaustive_order_independence(rng: np.random.Generator, trials: int, lengths: tuple[int, int]) -> None:
    for _ in range(trials):
        seq = random_sequence(rng, int(rng.integers(lengths[0], lengths[1] + 1)))
        scaled = ScaledSequence.from_sequence(seq)
        for k in (2, 3):
            if not is_order_independent(seq, k):
                continue
            counts = {dhk_count_scaled(order, scaled.capacity, k) for order in distinct_orderings(scaled.sizes)}
            assert len(counts) == 1, (seq, k)


def test_order_independent_sequences_have_one_count(rng):
    _exhaustive_order_independence(rng, 150, (1, 6))


@pytest.mark.slow
def test_order_independent_sequences_have_one_count_up_to_eight(rng):
    _exhaustive_order_independence(rng, 60, (7, 8))


def _order_independent_multiset(rng: np.random.Generator, k: int, length: int) -> Sequence:
    """Bordered items plus a small class that is uniform or below volume 2."""
    bordered = [s for s in SIZES if s >= Fraction(1, k)]
    small = [s for s in SIZES if s < Fraction(1, k)]
    n_small = int(rng.integers(0, length + 1))
    items = [bordered[i] for i in rng.integers(0, len(bordered), size=length - n_small).tolist()]
    if rng.random() < 0.5:
        items += [small[int(rng.integers(0, len(small)))]] * n_small
    else:
        total = Fraction(0)
        for i in rng.integers(0, len(small), size=n_small).tolist():
            if total + small[i] >= 2:
                break
            total += small[i]
            items.append(small[i])
    return Sequence(tuple(items))


def test_sampled_orderings_of_large_order_independent_multisets(rng):
    for _ in range(30):
        for k in (2, 3, 5):
            seq = _order_independent_multiset(rng, k, int(rng.integers(20, 51)))
            assert is_order_independent(seq, k)
            scaled = ScaledSequence.from_sequence(seq)
            sizes = np.array(scaled.sizes, dtype=object)
            expected = dhk_count_scaled(scaled.sizes, scaled.capacity, k)
            for _ in range(200):
                order = sizes[rng.permutation(len(sizes))].tolist()
                assert dhk_count_scaled(order, scaled.capacity, k) == expected, (seq, k)


def _sandwich(rng: np.random.Generator, trials: int) -> None:
    for _ in range(trials):
        seq = random_sequence(rng, int(rng.integers(1, 11)))
        opt = opt_exact(seq)
        greedy = verify_certificate(seq, greedy_pairing_lower_bound(seq))
        assert greedy <= opt <= opt_volume_bound(seq)
        dnf = covered_count(AlgorithmId.DNF, seq)
        assert reasonable_lower_bound(opt, 1) <= dnf <= opt, seq
        for k in (2, 3, 4):
            dhk = covered_count(AlgorithmId.DHK, seq, k)
            assert reasonable_lower_bound(opt, k) <= dhk <= opt, (seq, k)


def test_algorithms_between_reasonable_bound_and_opt(rng):
    _sandwich(rng, 150)


@pytest.mark.slow
def test_algorithms_between_reasonable_bound_and_opt_many(rng):
    _sandwich(rng, 1000)
