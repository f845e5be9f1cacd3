import numpy as np
import pytest

from app.core.algorithms import AlgorithmId
from app.core.items import Sequence
from app.core.random_order import permutation_counts
from app.core.sampling import RatioEstimate, seed_blocks, summarize
from app.exceptions import BadParams


def test_seed_blocks_cover_every_sample():
    blocks = seed_blocks(1, 2500, 1000)
    assert [(b.start, b.size) for b in blocks] == [(0, 1000), (1000, 1000), (2000, 500)]
    assert [b.index for b in blocks] == [0, 1, 2]


def test_seed_blocks_are_independent_of_count():
    short = seed_blocks(4, 20, 10)
    long = seed_blocks(4, 50, 10)
    assert np.array_equal(short[1].rng().random(3), long[1].rng().random(3))


def test_seed_blocks_need_samples():
    with pytest.raises(BadParams):
        seed_blocks(1, 0)


def test_worker_count_does_not_change_results():
    multiset = Sequence.of("1/2", "1/3", "1/3", "1/6", "2/3", "1/4", "3/4", "1/8")
    serial = permutation_counts(AlgorithmId.DNF, multiset, 40, seed=6, jobs=1, block_size=10)
    parallel = permutation_counts(AlgorithmId.DNF, multiset, 40, seed=6, jobs=2, block_size=10)
    assert np.array_equal(serial, parallel)


def test_summarize_zero_variance():
    estimate = summarize(np.full(5, 3), seed=0)
    assert estimate.point == estimate.ci_low == estimate.ci_high == 3.0
    assert estimate.ci_width == 0.0


def test_summarize_interval():
    estimate = summarize(np.array([1.0, 2.0, 3.0, 4.0]), seed=0)
    assert estimate.point == 2.5
    assert estimate.ci_low < 2.5 < estimate.ci_high
    assert estimate.contains(2.5)
    assert not estimate.contains(10.0, sigmas=3)


def test_estimate_ratio_and_model():
    estimate = summarize(np.array([2.0, 4.0]), seed=7).with_ratio(4)
    assert estimate.ratio_point == 0.75
    model = estimate.to_model()
    assert model.seed == 7
    assert model.ratio[1] == 0.75


def test_estimate_must_hold_its_point():
    with pytest.raises(BadParams):
        RatioEstimate(point=5.0, ci_low=0.0, ci_high=1.0, samples=2, seed=0)
