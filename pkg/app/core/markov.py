"""Finite Markov chains over exact rationals and their stationary distributions."""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from app.core.items import ONE, ZERO
from app.exceptions import BadParams, NotIrreducible

logger = logging.getLogger(__name__)


class ChainState(str, Enum):
    """Open-bin state of Dual Next-Fit on two-size items."""

    N = "N"  # no open bin
    L = "L"  # open bin holds a large item
    S = "S"  # open bin holds small items only


@dataclass(frozen=True)
class MarkovChain:
    """
    Row-stochastic chain. `closes` lists the transitions (from, to) that
    cover a bin, so the stationary closing rate can be read off.
    """

    states: tuple[str, ...]
    transition: tuple[tuple[Fraction, ...], ...]
    closes: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        n = len(self.states)
        if n == 0:
            raise BadParams("a chain needs at least one state")
        if len(set(self.states)) != n:
            raise BadParams(f"duplicate state names in {self.states}")
        rows = tuple(tuple(Fraction(p) for p in row) for row in self.transition)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise BadParams(f"transition matrix must be {n}×{n}")
        for name, row in zip(self.states, rows):
            if any(p < ZERO for p in row):
                raise BadParams(f"negative transition probability in row {name}")
            if sum(row, ZERO) != ONE:
                raise BadParams(f"row {name} sums to {sum(row, ZERO)}, not 1")
        for source, target in self.closes:
            if source not in self.states or target not in self.states:
                raise BadParams(f"closing transition ({source}, {target}) names an unknown state")
        object.__setattr__(self, "transition", rows)

    @classmethod
    def dnf_two_size(cls, p_large: Fraction | int | str = Fraction(1, 2)) -> "MarkovChain":
        """
        Dual Next-Fit on i.i.d. items of size 1-eps (probability p_large) and eps.

        Any item closes a bin holding a large one; a large item closes a bin of
        smalls; smalls alone never close.
        """
        p = Fraction(p_large)
        if not ZERO < p < ONE:
            raise BadParams(f"p_large must lie in (0, 1), got {p}")
        q = ONE - p
        n, l, s = ChainState.N.value, ChainState.L.value, ChainState.S.value
        return cls(
            (n, l, s),
            (
                (ZERO, p, q),
                (ONE, ZERO, ZERO),
                (p, ZERO, q),
            ),
            frozenset({(l, n), (s, n)}),
        )

    def index(self, state: str) -> int:
        return self.states.index(state)


def _reachable(adjacency: list[list[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in adjacency[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def is_irreducible(chain: MarkovChain) -> bool:
    """Every state reaches every other along positive transitions."""
    n = len(chain.states)
    forward = [[j for j in range(n) if chain.transition[i][j] > 0] for i in range(n)]
    backward = [[i for i in range(n) if chain.transition[i][j] > 0] for j in range(n)]
    return len(_reachable(forward, 0)) == n and len(_reachable(backward, 0)) == n


def markov_stationary(chain: MarkovChain) -> dict[str, Fraction]:
    """
    Exact stationary distribution by Grassmann-Taksar-Heyman elimination.

    Only additions, multiplications and divisions by positive sums occur, so
    the rational result is exact.

    Raises:
        NotIrreducible: the chain has more than one closed class or a
            transient state
    """
    if not is_irreducible(chain):
        raise NotIrreducible(f"chain on {chain.states} is not irreducible")

    n = len(chain.states)
    work = np.array(chain.transition, dtype=object)
    pivots = [ONE] * n
    for m in range(n - 1, 0, -1):
        pivot = sum(work[m, :m], ZERO)
        pivots[m] = pivot
        for i in range(m):
            factor = work[i, m] / pivot
            if factor:
                work[i, :m] = work[i, :m] + factor * work[m, :m]

    pi = [ONE] + [ZERO] * (n - 1)
    for m in range(1, n):
        pi[m] = sum((pi[i] * work[i, m] for i in range(m)), ZERO) / pivots[m]
    total = sum(pi, ZERO)
    result = {state: value / total for state, value in zip(chain.states, pi)}
    logger.debug(f"Stationary distribution: {result}")
    return result


def expected_closes_per_item(chain: MarkovChain) -> Fraction:
    """Long-run covered bins per item: stationary flow over the closing transitions."""
    pi = markov_stationary(chain)
    return sum(
        (pi[source] * chain.transition[chain.index(source)][chain.index(target)] for source, target in chain.closes),
        ZERO,
    )
