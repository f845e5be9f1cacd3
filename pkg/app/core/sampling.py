"""Seeded sampling blocks, the worker pool and confidence-interval estimates."""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import partial
from typing import Callable

import numpy as np

from app.config import get_settings
from app.exceptions import BadParams
from app.models.schemas import EstimateSchema

logger = logging.getLogger(__name__)

Z_95 = 1.96


@dataclass(frozen=True)
class SeedBlock:
    """
    A fixed slice of samples with its own seed.

    Block b of a run seeded with s draws from `SeedSequence(s).spawn(B)[b]`, so
    the samples do not depend on how blocks are spread over workers.
    """

    index: int
    start: int
    size: int
    seed: np.random.SeedSequence

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def seed_blocks(seed: int, samples: int, block_size: int | None = None) -> list[SeedBlock]:
    block_size = block_size or get_settings().mc_block_size
    if samples < 1:
        raise BadParams(f"samples must be ≥ 1, got {samples}")
    count = math.ceil(samples / block_size)
    children = np.random.SeedSequence(seed).spawn(count)
    blocks = []
    for index, child in enumerate(children):
        start = index * block_size
        blocks.append(SeedBlock(index, start, min(block_size, samples - start), child))
    return blocks


def run_blocks(fn: Callable[..., np.ndarray], blocks: list[SeedBlock], jobs: int | None = None, **kwargs) -> np.ndarray:
    """
    Apply `fn(block, **kwargs)` to every block and concatenate in block order.

    `fn` must be a module-level function when jobs > 1.
    """
    jobs = jobs or get_settings().jobs
    task = partial(fn, **kwargs)
    if jobs <= 1 or len(blocks) <= 1:
        results = [task(block) for block in blocks]
    else:
        logger.debug(f"Running {len(blocks)} blocks on {jobs} workers")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(task, blocks))
    return np.concatenate(results) if results else np.array([], dtype=np.int64)


@dataclass(frozen=True)
class RatioEstimate:
    """
    Mean of sampled covered counts with a 95% normal-approximation interval.

    When an OPT value is attached, the `ratio_*` fields divide the interval by
    it. `coverage_fraction` is mean covered bins per unit of volume.
    """

    point: float
    ci_low: float
    ci_high: float
    samples: int
    seed: int
    std: float = 0.0
    opt: int | None = None
    ratio_point: float | None = None
    ratio_low: float | None = None
    ratio_high: float | None = None
    coverage_fraction: float | None = None
    label: str = "mean covered bins"
    approximate: bool = False

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise BadParams("an estimate needs at least one sample")
        if not self.ci_low <= self.point <= self.ci_high:
            raise BadParams(f"interval [{self.ci_low}, {self.ci_high}] does not hold {self.point}")

    @property
    def ci_width(self) -> float:
        return self.ci_high - self.ci_low

    @property
    def standard_error(self) -> float:
        return self.std / math.sqrt(self.samples)

    def with_ratio(self, opt: int) -> "RatioEstimate":
        if opt <= 0:
            return replace(self, opt=opt)
        return replace(
            self,
            opt=opt,
            ratio_point=self.point / opt,
            ratio_low=self.ci_low / opt,
            ratio_high=self.ci_high / opt,
        )

    def with_volume(self, vol: Fraction) -> "RatioEstimate":
        return replace(self, coverage_fraction=self.point / float(vol) if vol else None)

    def contains(self, value: float, sigmas: float | None = None) -> bool:
        """True if `value` lies within `sigmas` standard errors (default: the 95% interval)."""
        if sigmas is None:
            return self.ci_low <= value <= self.ci_high
        return abs(value - self.point) <= sigmas * self.standard_error

    def to_model(self) -> EstimateSchema:
        return EstimateSchema(
            point=self.point,
            ci=[self.ci_low, self.ci_high],
            samples=self.samples,
            seed=self.seed,
            std=self.std,
            opt=self.opt,
            ratio=None if self.ratio_point is None else [self.ratio_low, self.ratio_point, self.ratio_high],
            coverage_fraction=self.coverage_fraction,
            label=self.label,
            approximate=self.approximate,
        )


def summarize(
    values: np.ndarray, seed: int, label: str = "mean covered bins", approximate: bool = False
) -> RatioEstimate:
    """Mean and 95% interval of per-sample values; zero variance gives a zero-width interval."""
    samples = len(values)
    if samples < 1:
        raise BadParams("no samples to summarize")
    values = np.asarray(values, dtype=np.float64)
    point = float(values.mean())
    std = float(values.std(ddof=1)) if samples > 1 else 0.0
    if std == 0.0:
        low = high = point
    else:
        half = Z_95 * std / math.sqrt(samples)
        low, high = point - half, point + half
    return RatioEstimate(point, low, high, samples, seed, std, label=label, approximate=approximate)
