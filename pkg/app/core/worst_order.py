"""
Worst-order values: the fewest bins an algorithm covers over all orderings of a
multiset.

Exact mode runs a memoized search over (remaining counts, packer state). Two
orderings that reach the same counts and the same open-bin state have the same
future, so each state is solved once. A state stops expanding as soon as one
child reaches the volume floor of `next_fit_floor`. Sampled mode takes the
minimum over seeded random orderings, which only bounds the worst order from
above and is labeled that way.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from app.config import get_settings
from app.core.algorithms import (
    AlgorithmId,
    Packer,
    algorithm_label,
    bordered_covered,
    covered_count,
    get_algorithm,
    harmonic_class,
)
from app.core.items import ScaledSequence, Sequence, distinct_orderings, format_rational
from app.core.random_order import permutation_counts, replay_permutation
from app.exceptions import BadParams, BudgetExceeded
from app.models.schemas import MeasureReport

logger = logging.getLogger(__name__)

EXACT_LABEL = "A_W"
SAMPLED_LABEL = "upper bound on A_W"


@dataclass(frozen=True)
class WorstOrderResult:
    value: int
    exact: bool
    witness: Sequence
    nodes: int = 0
    samples: int | None = None
    seed: int | None = None
    label: str = EXACT_LABEL
    notes: tuple[str, ...] = field(default=())

    def to_model(self, algorithm: str, params: dict[str, str] | None = None) -> MeasureReport:
        params = dict(params or {})
        if self.samples is not None:
            params["samples"] = str(self.samples)
            params["seed"] = str(self.seed)
        return MeasureReport(
            measure="worst_order",
            algorithm=algorithm,
            params=params,
            value=str(self.value),
            exact=self.exact,
            witness=[format_rational(i) for i in self.witness],
            label=self.label,
            nodes=self.nodes,
            notes=list(self.notes),
        )


def arrangement_count(multiset: Sequence) -> int:
    """Number of distinct orderings: n! / prod(m_i!)."""
    total = math.factorial(len(multiset))
    for count in multiset.multiset().values():
        total //= math.factorial(count)
    return total


def next_fit_floor(volume: int, largest: int, capacity: int) -> int:
    """
    Fewest closes Next-Fit can make while packing `volume` more units.

    A bin closes holding at most (capacity - 1) + largest, and the bin left
    open at the end holds at most capacity - 1.
    """
    if largest <= 0:
        return 0
    excess = volume - (capacity - 1)
    if excess <= 0:
        return 0
    return -(-excess // (capacity - 1 + largest))


def dnf_worst_order_lower_bound(multiset: Sequence) -> int:
    """Volume floor on the Dual Next-Fit worst order of a multiset."""
    if not len(multiset):
        return 0
    scaled = ScaledSequence.from_sequence(multiset)
    return next_fit_floor(sum(scaled.sizes), max(scaled.sizes), scaled.capacity)


class _WorstOrderSearch:
    """Memoized minimum over orderings, on the integer image of a multiset."""

    def __init__(self, alg: AlgorithmId, k: int, scaled: ScaledSequence, budget: int):
        self.alg = alg
        self.k = k
        self.capacity = scaled.capacity
        counts = Counter(scaled.sizes)
        self.values = tuple(sorted(counts, reverse=True))
        self.start = tuple(counts[v] for v in self.values)
        if alg is AlgorithmId.DHK:
            self.classes = tuple(harmonic_class(v, k, self.capacity) for v in self.values)
        else:
            self.classes = (1,) * len(self.values)
        self.budget = budget
        self.nodes = 0
        # (counts, state key) -> (min future covered, index of the value to place next)
        self.memo: dict[tuple, tuple[int, int]] = {}

    def packer(self) -> Packer:
        return get_algorithm(self.alg, self.k, capacity=self.capacity)

    def lower_bound(self, packer: Packer, counts: tuple[int, ...]) -> int:
        bordered: Counter = Counter()
        if self.alg is AlgorithmId.DNF:
            (level,) = packer.state_key()
        else:
            level = 0
            for j, count, total in packer.state_key():
                if j == 1:
                    level = total
                else:
                    bordered[j] += count
        small_volume = 0
        small_max = 0
        for value, cls, n in zip(self.values, self.classes, counts):
            if not n:
                continue
            if cls == 1:
                small_volume += value * n
                small_max = max(small_max, value)
            else:
                bordered[cls] += n
        return bordered_covered(bordered) + next_fit_floor(level + small_volume, small_max, self.capacity)

    def solve(self, counts: tuple[int, ...], packer: Packer) -> int:
        key = (counts, packer.state_key())
        hit = self.memo.get(key)
        if hit is not None:
            return hit[0]
        if not any(counts):
            self.memo[key] = (0, -1)
            return 0

        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"Worst-order search passed {self.budget} states")

        floor = self.lower_bound(packer, counts)
        best, choice = -1, -1
        for index, n in enumerate(counts):
            if not n:
                continue
            child = packer.copy()
            child.place(self.values[index])
            rest = counts[:index] + (n - 1,) + counts[index + 1 :]
            value = child.covered - packer.covered + self.solve(rest, child)
            if best < 0 or value < best:
                best, choice = value, index
                if best == floor:
                    break
        self.memo[key] = (best, choice)
        return best

    def witness(self) -> Sequence:
        counts = self.start
        packer = self.packer()
        order = []
        while any(counts):
            _, choice = self.memo[(counts, packer.state_key())]
            value = self.values[choice]
            order.append(Fraction(value, self.capacity))
            packer.place(value)
            counts = counts[:choice] + (counts[choice] - 1,) + counts[choice + 1 :]
        return Sequence(tuple(order))


def _heuristic_orders(multiset: Sequence) -> list[Sequence]:
    return [multiset, multiset.sorted(), multiset.sorted(descending=True)]


def worst_order_search(
    alg: AlgorithmId | str,
    multiset: Sequence,
    k: int | None = None,
    budget: int | None = None,
) -> WorstOrderResult:
    """
    Exact worst order by memoized search.

    The given, ascending and descending orders are tried first; when the best
    of them already meets the volume floor, no search is needed.

    Raises:
        BudgetExceeded: more than `budget` distinct states were expanded
    """
    alg = AlgorithmId(alg)
    k = k if k is not None else 2
    budget = budget or get_settings().worst_order_budget
    if not len(multiset):
        return WorstOrderResult(0, True, multiset)

    scaled = ScaledSequence.from_sequence(multiset)
    search = _WorstOrderSearch(alg, k, scaled, budget)
    root = search.packer()
    floor = search.lower_bound(root, search.start)

    upper, shortcut = min(((covered_count(alg, s, k), s) for s in _heuristic_orders(multiset)), key=lambda t: t[0])
    if upper == floor:
        logger.debug(f"Worst order of {len(multiset)} items met the volume floor {floor} without search")
        return WorstOrderResult(upper, True, Sequence(shortcut.items), notes=("volume floor reached",))

    value = search.solve(search.start, root)
    logger.info(f"Worst-order search on {len(multiset)} items: {value} covered, {search.nodes} states")
    return WorstOrderResult(value, True, search.witness(), nodes=search.nodes)


def _dhk_worst_order(multiset: Sequence, k: int, budget: int | None) -> WorstOrderResult:
    """Bordered classes cover floor(n_j/j) in any order; only the small class depends on order."""
    bordered_items = []
    small_items = []
    classes: Counter = Counter()
    for item in multiset:
        j = harmonic_class(item, k)
        if j == 1:
            small_items.append(item)
        else:
            bordered_items.append(item)
            classes[j] += 1
    inner = worst_order_search(AlgorithmId.DNF, Sequence(tuple(small_items)), budget=budget)
    witness = Sequence(tuple(bordered_items) + inner.witness.items)
    value = bordered_covered(classes) + inner.value
    return WorstOrderResult(value, True, witness, nodes=inner.nodes, notes=inner.notes)


def worst_order_value(
    alg: AlgorithmId | str,
    multiset: Sequence,
    mode: str = "exact",
    samples: int | None = None,
    seed: int | None = None,
    k: int | None = None,
    budget: int | None = None,
    jobs: int | None = None,
) -> WorstOrderResult:
    """
    Worst-order covered count of an algorithm on a multiset.

    Args:
        alg: Algorithm id
        multiset: Items; their given order is only used as a first guess
        mode: "exact" or "sampled"
        samples: Sampled orderings (sampled mode)
        seed: Master seed (sampled mode, default `default_seed`)
        k: DHk parameter
        budget: Exact-mode state budget (default `worst_order_budget`)
        jobs: Worker processes (sampled mode)

    Returns:
        WorstOrderResult with a witness ordering that attains the value
    """
    alg = AlgorithmId(alg)
    k = k if k is not None else 2
    if mode == "exact":
        if alg is AlgorithmId.DHK:
            return _dhk_worst_order(multiset, k, budget)
        return worst_order_search(alg, multiset, budget=budget)
    if mode != "sampled":
        raise BadParams(f"Unknown worst-order mode '{mode}'")
    if not samples or samples < 1:
        raise BadParams("sampled worst order needs samples ≥ 1")

    seed = get_settings().default_seed if seed is None else seed
    counts = permutation_counts(alg, multiset, samples, seed, k, jobs)
    index = int(np.argmin(counts))
    witness = replay_permutation(multiset, seed, index, samples)
    logger.info(f"Sampled worst order of {algorithm_label(alg, k)}: {int(counts[index])} over {samples} orderings")
    return WorstOrderResult(
        int(counts[index]), False, witness, samples=samples, seed=seed, label=SAMPLED_LABEL
    )


def worst_order_bruteforce(
    alg: AlgorithmId | str, multiset: Sequence, k: int | None = None, budget: int | None = None
) -> int:
    """Minimum over every distinct ordering, enumerated one by one."""
    budget = budget or get_settings().worst_order_budget
    arrangements = arrangement_count(multiset)
    if arrangements > budget:
        raise BudgetExceeded(f"{arrangements} distinct orderings exceed the budget of {budget}")
    alg = AlgorithmId(alg)
    scaled = ScaledSequence.from_sequence(multiset)
    best = None
    for order in distinct_orderings(scaled.sizes):
        packer = get_algorithm(alg, k, capacity=scaled.capacity).feed(order)
        if best is None or packer.covered < best:
            best = packer.covered
    return best or 0


@dataclass(frozen=True)
class RelativeWorstOrder:
    dhk_w: int
    dnf_w: int
    k: int

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.dhk_w, self.dnf_w) if self.dnf_w else None


def relative_worst_order(multiset: Sequence, k: int = 2, budget: int | None = None) -> RelativeWorstOrder:
    """DHk and DNF each on their own worst ordering of the same multiset."""
    dhk = worst_order_value(AlgorithmId.DHK, multiset, k=k, budget=budget).value
    dnf = worst_order_value(AlgorithmId.DNF, multiset, budget=budget).value
    return RelativeWorstOrder(dhk, dnf, k)
