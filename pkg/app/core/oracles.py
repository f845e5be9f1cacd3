"""
Optimal offline values.

Exact search for small instances, closed forms for structured inputs and
partition certificates that lower-bound OPT.
"""

import logging
import math
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from app.config import get_settings
from app.core.items import ONE, ItemSize, ScaledSequence, Sequence, volume
from app.exceptions import ClaimMismatch, EpsTooLarge, InstanceTooLarge, NotSubMultiset
from app.models.schemas import CertificateSchema

logger = logging.getLogger(__name__)

BRUTEFORCE_MAX_ITEMS = 10


@dataclass(frozen=True)
class PartitionCertificate:
    """Proposed bins over a sub-multiset of a sequence."""

    groups: tuple[tuple[ItemSize, ...], ...]
    claimed_covered: int

    @classmethod
    def of(cls, groups: Iterable[Iterable[Fraction | int | str]], claimed: int | None = None) -> "PartitionCertificate":
        groups = tuple(tuple(Fraction(i) for i in g) for g in groups)
        if claimed is None:
            claimed = sum(1 for g in groups if sum(g, Fraction(0)) >= ONE)
        return cls(groups, claimed)

    def multiset(self) -> Counter:
        counts: Counter = Counter()
        for group in self.groups:
            counts.update(group)
        return counts

    def to_model(self) -> CertificateSchema:
        return CertificateSchema(
            groups=[[f"{i.numerator}/{i.denominator}" for i in g] for g in self.groups],
            claimed=self.claimed_covered,
        )

    @classmethod
    def from_model(cls, model: CertificateSchema) -> "PartitionCertificate":
        return cls(tuple(tuple(Fraction(i) for i in g) for g in model.groups), model.claimed)


def verify_certificate(seq: Sequence, cert: PartitionCertificate) -> int:
    """
    Check a certificate and count its covered groups.

    Returns:
        Number of groups with sum ≥ 1, a proven lower bound on OPT(seq)

    Raises:
        NotSubMultiset: the groups use items `seq` does not hold
        ClaimMismatch: the certificate claims more than it covers
    """
    available = seq.multiset()
    used = cert.multiset()
    excess = used - available
    if excess:
        sample = ", ".join(f"{v}×{c}" for v, c in list(excess.items())[:5])
        raise NotSubMultiset(f"Certificate uses items not in the sequence: {sample}")
    covered = sum(1 for g in cert.groups if sum(g, Fraction(0)) >= ONE)
    if cert.claimed_covered > covered:
        raise ClaimMismatch(f"Certificate claims {cert.claimed_covered} covered groups, verifies {covered}")
    return covered


def opt_volume_bound(seq: Sequence) -> int:
    """floor(volume): no packing covers more bins than whole units of volume."""
    return math.floor(volume(seq))


def opt_two_size(large_count: int, small_count: int, eps: Fraction) -> int:
    """
    OPT for `large_count` items of 1-eps and `small_count` items of eps.

    Each large pairs with a small to exactly 1, or with another large; surplus
    smalls total less than 1 and are wasted.
    """
    n = large_count + small_count
    eps = Fraction(eps)
    if large_count < 0 or small_count < 0:
        raise EpsTooLarge(f"Counts must be nonnegative, got l={large_count}, s={small_count}")
    if not (0 < eps < (Fraction(1, n) if n else ONE)):
        raise EpsTooLarge(f"eps={eps} must satisfy 0 < eps < 1/(l+s) = 1/{n}")
    if small_count <= large_count:
        return n // 2
    return large_count


def reasonable_lower_bound(opt: int, max_open: int) -> Fraction:
    """(OPT - c)/2, the guarantee of an algorithm that closes bins as soon as covered."""
    return Fraction(opt - max_open, 2)


def greedy_pairing_lower_bound(seq: Sequence) -> PartitionCertificate:
    """
    Pairing heuristic: the largest remaining item heads a group, which is then
    completed by the smallest item that finishes it, or topped up with the
    largest remaining item when none does.
    """
    remaining = sorted(seq.items)
    groups = []
    while remaining:
        group = [remaining.pop()]
        total = group[0]
        while total < ONE and remaining:
            i = bisect_left(remaining, ONE - total)
            item = remaining.pop(i) if i < len(remaining) else remaining.pop()
            group.append(item)
            total += item
        if total < ONE:
            break
        groups.append(tuple(group))
    return PartitionCertificate(tuple(groups), len(groups))


@dataclass
class OptResult:
    value: int
    groups: list[tuple[ItemSize, ...]] = field(default_factory=list)
    nodes: int = 0

    def certificate(self) -> PartitionCertificate:
        return PartitionCertificate(tuple(self.groups), self.value)


class _BranchAndBound:
    """
    Group-at-a-time search over distinct values.

    Every new group is headed by the largest remaining value, or all copies of
    that value are wasted. Inside a group values are added in non-increasing
    order, and a group is completed only by the smallest value that covers it.
    """

    def __init__(self, seq: Sequence, node_limit: int):
        scaled = ScaledSequence.from_sequence(seq)
        self.capacity = scaled.capacity
        counts = Counter(scaled.sizes)
        self.values = sorted(counts, reverse=True)
        self.counts = [counts[v] for v in self.values]
        self.scale = {v: Fraction(v, self.capacity) for v in self.values}
        self.node_limit = node_limit
        self.nodes = 0
        self.best = -1
        self.best_groups: list[tuple[int, ...]] = []
        self._groups: list[tuple[int, ...]] = []

    def solve(self, seed_bound: int = 0, seed_groups: list[tuple[int, ...]] | None = None) -> None:
        self.best = seed_bound
        self.best_groups = list(seed_groups or [])
        total = sum(v * c for v, c in zip(self.values, self.counts))
        self._new_group(0, total)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise InstanceTooLarge(
                f"Exact OPT search exceeded {self.node_limit} nodes; raise the node limit or shrink the instance"
            )

    def _new_group(self, covered: int, remaining: int) -> None:
        self._tick()
        if covered > self.best:
            self.best = covered
            self.best_groups = list(self._groups)
        if covered + remaining // self.capacity <= self.best:
            return
        head = next((i for i, c in enumerate(self.counts) if c), None)
        if head is None:
            return
        value = self.values[head]

        self.counts[head] -= 1
        self._extend(covered, (value,), value, head, remaining - value)
        self.counts[head] += 1

        wasted = self.counts[head]
        self.counts[head] = 0
        self._new_group(covered, remaining - wasted * value)
        self.counts[head] = wasted

    def _extend(self, covered: int, group: tuple[int, ...], level: int, start: int, remaining: int) -> None:
        self._tick()
        if covered + (remaining + level) // self.capacity <= self.best:
            return
        need = self.capacity - level

        # values are descending, so the covering ones form a prefix
        closer = None
        for i in range(start, len(self.values)):
            if self.values[i] < need:
                break
            if self.counts[i]:
                closer = i
        if closer is not None:
            value = self.values[closer]
            self.counts[closer] -= 1
            self._groups.append(group + (value,))
            self._new_group(covered + 1, remaining - value)
            self._groups.pop()
            self.counts[closer] += 1

        for i in range(start, len(self.values)):
            value = self.values[i]
            if value >= need or not self.counts[i]:
                continue
            self.counts[i] -= 1
            self._extend(covered, group + (value,), level + value, i, remaining - value)
            self.counts[i] += 1


def opt_exact_solve(multiset: Sequence, node_limit: int | None = None) -> OptResult:
    """
    Exact OPT with an optimal grouping.

    Args:
        multiset: Items; order is ignored
        node_limit: Search budget (default `opt_node_limit`)

    Returns:
        OptResult with value, covering groups and nodes explored
    """
    node_limit = node_limit if node_limit is not None else get_settings().opt_node_limit
    if not len(multiset):
        return OptResult(0)

    search = _BranchAndBound(multiset, node_limit)
    greedy = greedy_pairing_lower_bound(multiset)
    seed_groups = [tuple(int(i * search.capacity) for i in g) for g in greedy.groups]
    search.solve(greedy.claimed_covered, seed_groups)

    groups = [tuple(search.scale[v] for v in g) for g in search.best_groups]
    logger.debug(f"opt_exact: {len(multiset)} items, value {search.best}, {search.nodes} nodes")
    return OptResult(search.best, groups, search.nodes)


def opt_exact(multiset: Sequence, node_limit: int | None = None) -> int:
    """Maximum number of bins any partition of `multiset` covers."""
    return opt_exact_solve(multiset, node_limit).value


def _set_partitions(n: int):
    """Restricted growth strings of length n."""
    labels = [0] * n

    def grow(i: int, blocks: int):
        if i == n:
            yield labels
            return
        for b in range(blocks + 1):
            labels[i] = b
            yield from grow(i + 1, max(blocks, b + 1))

    if n == 0:
        yield labels
    else:
        yield from grow(0, 0)


def opt_bruteforce(multiset: Sequence) -> int:
    """OPT by enumerating every set partition; independent of the branch-and-bound."""
    n = len(multiset)
    if n > BRUTEFORCE_MAX_ITEMS:
        raise InstanceTooLarge(f"Brute force handles at most {BRUTEFORCE_MAX_ITEMS} items, got {n}")
    scaled = ScaledSequence.from_sequence(multiset)
    best = 0
    for labels in _set_partitions(n):
        sums: dict[int, int] = {}
        for label, size in zip(labels, scaled.sizes):
            sums[label] = sums.get(label, 0) + size
        best = max(best, sum(1 for s in sums.values() if s >= scaled.capacity))
    return best
