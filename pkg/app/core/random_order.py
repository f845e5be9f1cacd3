"""Random-order performance: seeded permutation sampling and the exact two-size expectation."""

import logging
from fractions import Fraction
from math import comb

import numpy as np

from app.config import get_settings
from app.core.algorithms import AlgorithmId, dhk_count_scaled, dnf_count_scaled
from app.core.items import ScaledSequence, Sequence, distinct_orderings, volume
from app.core.sampling import RatioEstimate, SeedBlock, run_blocks, seed_blocks, summarize
from app.exceptions import BadEps, BadParams

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100
TWO_SIZE_DP_LIMIT = 10_000


def _count(sizes: list[int], capacity: int, alg: AlgorithmId, k: int) -> int:
    if alg is AlgorithmId.DNF:
        return dnf_count_scaled(sizes, capacity)
    return dhk_count_scaled(sizes, capacity, k)


def _permutation_block(block: SeedBlock, sizes: tuple[int, ...], capacity: int, alg: AlgorithmId, k: int) -> np.ndarray:
    rng = block.rng()
    base = np.array(sizes, dtype=object)
    out = np.empty(block.size, dtype=np.int64)
    for t in range(block.size):
        order = rng.permutation(len(sizes))
        out[t] = _count(base[order].tolist(), capacity, alg, k)
    return out


def permutation_counts(
    alg: AlgorithmId | str,
    multiset: Sequence,
    samples: int,
    seed: int,
    k: int | None = None,
    jobs: int | None = None,
    block_size: int | None = None,
) -> np.ndarray:
    """Covered counts on `samples` uniformly random orderings, in sample order."""
    alg = AlgorithmId(alg)
    scaled = ScaledSequence.from_sequence(multiset)
    blocks = seed_blocks(seed, samples, block_size)
    return run_blocks(
        _permutation_block,
        blocks,
        jobs,
        sizes=scaled.sizes,
        capacity=scaled.capacity,
        alg=alg,
        k=k if k is not None else 2,
    )


def replay_permutation(
    multiset: Sequence, seed: int, sample: int, samples: int, block_size: int | None = None
) -> Sequence:
    """The ordering drawn for sample number `sample` of a seeded run."""
    blocks = seed_blocks(seed, samples, block_size)
    block = next(b for b in blocks if b.start <= sample < b.start + b.size)
    rng = block.rng()
    for _ in range(sample - block.start):
        rng.permutation(len(multiset))
    return multiset.permuted(rng.permutation(len(multiset)).tolist())


def random_order_estimate(
    alg: AlgorithmId | str,
    multiset: Sequence,
    samples: int,
    seed: int | None = None,
    k: int | None = None,
    opt: int | None = None,
    jobs: int | None = None,
    block_size: int | None = None,
) -> RatioEstimate:
    """
    Estimate E over random orderings of the covered count.

    Args:
        alg: Algorithm id
        multiset: Items; their given order is ignored
        samples: Number of sampled orderings, ≥ 100
        seed: Master seed (default `default_seed`)
        k: DHk parameter
        opt: OPT of the multiset, to report the ratio
        jobs: Worker processes
        block_size: Samples per seed block

    Returns:
        RatioEstimate of the mean covered count, with ratio fields when `opt`
        is given and the covered-per-volume fraction
    """
    if samples < MIN_SAMPLES:
        raise BadParams(f"random-order estimates need at least {MIN_SAMPLES} samples, got {samples}")
    seed = get_settings().default_seed if seed is None else seed
    counts = permutation_counts(alg, multiset, samples, seed, k, jobs, block_size)
    estimate = summarize(counts, seed).with_volume(volume(multiset))
    if opt is not None:
        estimate = estimate.with_ratio(opt)
    logger.info(
        f"Random order {AlgorithmId(alg).value}: {samples} samples, mean {estimate.point:.6f} "
        f"± {estimate.ci_width / 2:.6f}"
    )
    return estimate


def exact_random_order_average(alg: AlgorithmId | str, multiset: Sequence, k: int | None = None) -> Fraction:
    """Average covered count over all distinct orderings, by enumeration."""
    alg = AlgorithmId(alg)
    scaled = ScaledSequence.from_sequence(multiset)
    total = 0
    count = 0
    for order in distinct_orderings(scaled.sizes):
        total += _count(list(order), scaled.capacity, alg, k if k is not None else 2)
        count += 1
    return Fraction(total, count) if count else Fraction(0)


def exact_expected_dnf_two_size(l: int, s: int) -> Fraction:
    """
    Exact expected DNF count on l items of 1-eps and s of eps in uniformly
    random order.

    A large closes any nonempty bin, a small closes a bin holding a large, and
    smalls alone never cover a bin. T_X(i, j) counts closes summed over all
    orderings of i larges and j smalls entered in open-bin state X:

        T_N(i,j) = T_L(i-1,j) + T_S(i,j-1)
        T_L(i,j) = C(i+j,i) + T_N(i-1,j) + T_N(i,j-1)
        T_S(i,j) = C(i+j-1,i-1) + T_N(i-1,j) + T_S(i,j-1),   T_S(0,j) = 0

    Rows over j are computed for i = 0..l. T_S is a running sum along the row,
    so each row is a handful of vector operations on Python integers.
    """
    if l < 0 or s < 0:
        raise BadParams(f"counts must be nonnegative, got l={l}, s={s}")
    if l + s > TWO_SIZE_DP_LIMIT:
        raise BadParams(f"l+s = {l + s} exceeds {TWO_SIZE_DP_LIMIT}")
    if l + s == 0:
        return Fraction(0)

    width = s + 1
    zero = np.zeros(width, dtype=object)

    # row i = 0: smalls alone never close a bin
    binom_prev = np.ones(width, dtype=object)  # C(j, 0)
    t_n = zero.copy()
    # T_L(0, j): the first small closes the large's bin, then smalls never close
    t_l = zero.copy()
    t_l[1:] = 1

    for _ in range(1, l + 1):
        binom = np.cumsum(binom_prev)  # C(i+j, i)
        # T_S(i, j) = sum_{t ≤ j} C(i+t-1, i-1) + T_N(i-1, t)
        new_s = np.cumsum(binom_prev + t_n)
        new_n = t_l.copy()
        new_n[1:] = new_n[1:] + new_s[:-1]
        new_l = binom + t_n
        new_l[1:] = new_l[1:] + new_n[:-1]
        binom_prev, t_n, t_l = binom, new_n, new_l

    total = int(t_n[s])
    return Fraction(total, comb(l + s, l))


def dnf_two_size_closes(kinds: np.ndarray) -> int:
    """DNF count on a two-size sequence given as booleans, True for a large item."""
    covered = 0
    state = 0  # 0 empty, 1 holds a large, 2 smalls only
    for is_large in kinds.tolist():
        if state == 0:
            state = 1 if is_large else 2
        elif state == 1 or is_large:
            covered += 1
            state = 0
    return covered


def _iid_block(block: SeedBlock, n: int) -> np.ndarray:
    rng = block.rng()
    out = np.empty(block.size, dtype=np.int64)
    for t in range(block.size):
        out[t] = dnf_two_size_closes(rng.random(n) < 0.5)
    return out


def iid_two_size_estimate(
    n: int,
    eps: Fraction,
    samples: int,
    seed: int | None = None,
    jobs: int | None = None,
    block_size: int | None = None,
) -> RatioEstimate:
    """DNF covered bins per item on n i.i.d. fair-coin two-size items."""
    eps = Fraction(eps)
    if n < 1 or not 0 < eps < Fraction(1, n):
        raise BadEps(f"need n ≥ 1 and 0 < eps < 1/n, got n={n}, eps={eps}")
    seed = get_settings().default_seed if seed is None else seed
    counts = run_blocks(_iid_block, seed_blocks(seed, samples, block_size), jobs, n=n)
    return summarize(counts / n, seed, label="DNF covered bins per item")
