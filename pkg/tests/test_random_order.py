from fractions import Fraction

import numpy as np
import pytest

from app.core.algorithms import AlgorithmId, covered_count
from app.core.generators import default_eps, gen_two_size
from app.core.items import Sequence
from app.core.oracles import opt_two_size
from app.core.random_order import (
    dnf_two_size_closes,
    exact_expected_dnf_two_size,
    exact_random_order_average,
    iid_two_size_estimate,
    permutation_counts,
    random_order_estimate,
    replay_permutation,
)
from app.exceptions import BadEps, BadParams

EPS = Fraction(1, 100)


@pytest.mark.parametrize("l, s", [(l, s) for l in range(10) for s in range(10 - l)])
def test_two_size_dp_matches_enumeration(l, s):
    multiset = gen_two_size(None, EPS, seed=1, counts=(l, s))
    assert exact_expected_dnf_two_size(l, s) == exact_random_order_average(AlgorithmId.DNF, multiset)


def test_two_size_dp_small_cases():
    assert exact_expected_dnf_two_size(1, 1) == 1
    assert exact_expected_dnf_two_size(2, 0) == 1
    assert exact_expected_dnf_two_size(0, 7) == 0


def test_two_size_dp_limits():
    with pytest.raises(BadParams):
        exact_expected_dnf_two_size(-1, 2)
    with pytest.raises(BadParams):
        exact_expected_dnf_two_size(6000, 6000)


@pytest.mark.slow
def test_two_size_ratio_at_scale():
    ratio = exact_expected_dnf_two_size(5000, 5000) / 5000
    assert abs(float(ratio) - 0.8) < 0.01


@pytest.mark.slow
def test_dual_harmonic_two_size_ratio_at_scale():
    eps = default_eps(Fraction(1, 10_000))
    multiset = gen_two_size(None, eps, seed=3, counts=(5000, 5000))
    opt = opt_two_size(5000, 5000, eps)
    estimate = random_order_estimate(AlgorithmId.DHK, multiset, 100, seed=3, k=2, opt=opt)
    assert opt == 5000
    assert abs(estimate.ratio_point - 0.5) < 0.01


def test_two_size_closes():
    kinds = np.array([True, False, False, False, True, True, True])
    assert dnf_two_size_closes(kinds) == 3


def test_estimate_is_reproducible():
    multiset = Sequence.of("1/2", "1/3", "1/3", "1/6", "2/3", "1/4", "3/4")
    first = random_order_estimate(AlgorithmId.DNF, multiset, 200, seed=5, opt=3)
    again = random_order_estimate(AlgorithmId.DNF, multiset, 200, seed=5, opt=3)
    assert first == again
    assert first.ci_low <= first.point <= first.ci_high
    assert first.ratio_point == pytest.approx(first.point / 3)
    assert first.coverage_fraction == pytest.approx(first.point / 3)


def test_estimate_close_to_exact_average():
    multiset = Sequence.of("1/2", "1/3", "1/3", "1/6", "2/3", "1/4", "3/4")
    exact = float(exact_random_order_average(AlgorithmId.DNF, multiset))
    estimate = random_order_estimate(AlgorithmId.DNF, multiset, 2000, seed=5)
    assert estimate.contains(exact, sigmas=5)


def test_estimate_needs_samples():
    with pytest.raises(BadParams):
        random_order_estimate(AlgorithmId.DNF, Sequence.of("1/2", "1/2"), 10)


def test_replay_reproduces_each_sample():
    multiset = Sequence.of("1/2", "1/3", "1/3", "1/6", "2/3", "1/4", "3/4")
    counts = permutation_counts(AlgorithmId.DHK, multiset, 30, seed=8, k=3, block_size=7)
    for index in (0, 6, 7, 29):
        order = replay_permutation(multiset, 8, index, 30, block_size=7)
        assert covered_count(AlgorithmId.DHK, order, 3) == counts[index]


def test_iid_rate():
    estimate = iid_two_size_estimate(1000, Fraction(1, 10_000), samples=200, seed=2)
    assert abs(estimate.point - 0.4) < 0.01


def test_iid_eps_bound():
    with pytest.raises(BadEps):
        iid_two_size_estimate(100, Fraction(1, 100), samples=10)


def test_order_independent_multiset_has_zero_variance():
    multiset = gen_two_size(None, EPS, seed=6, counts=(7, 5))
    estimate = random_order_estimate(AlgorithmId.DHK, multiset, 300, seed=6, k=2)
    assert estimate.std == 0
    assert estimate.ci_high - estimate.ci_low == 0
    assert estimate.point == covered_count(AlgorithmId.DHK, multiset, 2) == 3
