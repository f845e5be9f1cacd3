"""Uniform-distribution drivers: Monte Carlo ratios and the small-n OPT check."""

import numpy as np

from app.config import get_settings
from app.core.algorithms import AlgorithmId, algorithm_label, dhk_count_float, dnf_count_float
from app.core.analytic import eru_dhk, eru_dnf, expected_opt_uniform
from app.core.generators import gen_uniform, uniform_sequence
from app.core.oracles import greedy_pairing_lower_bound, opt_exact, opt_volume_bound
from app.core.sampling import SeedBlock, run_blocks, seed_blocks, summarize
from app.exceptions import BadParams

from .report import ExperimentReport, Source, timed

MAX_UNIFORM_ITEMS = 100_000_000


def _uniform_block(block: SeedBlock, n: int, alg: AlgorithmId, k: int) -> np.ndarray:
    rng = block.rng()
    out = np.empty(block.size, dtype=np.float64)
    denominator = float(expected_opt_uniform(n))
    for t in range(block.size):
        sizes = gen_uniform(n, rng=rng)
        count = dnf_count_float(sizes) if alg is AlgorithmId.DNF else dhk_count_float(sizes, k)
        out[t] = count / denominator
    return out


@timed
def run_uniform_experiment(
    alg: AlgorithmId | str,
    k: int,
    n: int,
    trials: int,
    seed: int | None = None,
    jobs: int | None = None,
    tolerance: float | None = None,
    sigmas: float | None = None,
) -> ExperimentReport:
    """
    Monte Carlo ratio of covered bins to n/2 on n uniform items.

    Trial t draws from its own child of `SeedSequence(seed)`, so results do not
    depend on `jobs`. The expectation passes when the mean lies within
    `tolerance` of the analytic ratio, or within `sigmas` standard errors when
    no tolerance is given.
    """
    alg = AlgorithmId(alg)
    if n < 1 or trials < 1:
        raise BadParams(f"need n ≥ 1 and trials ≥ 1, got n={n}, trials={trials}")
    if n * trials > MAX_UNIFORM_ITEMS:
        raise BadParams(f"n·trials = {n * trials} exceeds {MAX_UNIFORM_ITEMS}")
    settings = get_settings()
    seed = settings.default_seed if seed is None else seed
    sigmas = sigmas or settings.tolerance_sigmas
    label = algorithm_label(alg, k)

    ratios = run_blocks(_uniform_block, seed_blocks(seed, trials, block_size=1), jobs, n=n, alg=alg, k=k)
    estimate = summarize(ratios, seed, label=f"{label} / (n/2)", approximate=True)
    reference = eru_dnf() if alg is AlgorithmId.DNF else eru_dhk(k).total

    report = ExperimentReport(
        "uniform",
        {"algorithm": label, "k": k, "n": n, "trials": trials},
        seed,
        records=[{"trial": t, "ratio": float(r)} for t, r in enumerate(ratios)],
        summary={"estimate": estimate.to_model().model_dump(), "analytic": reference},
    )
    allowed = tolerance if tolerance is not None else sigmas * estimate.standard_error
    report.expect(f"{label} ratio vs analytic", float(reference), estimate.point, Source.ANALYTIC, allowed)
    return report


@timed
def run_uniform_opt_check(n: int, trials: int, seed: int | None = None) -> ExperimentReport:
    """
    Small-n check that n/2 does not understate OPT on uniform items.

    Every covered bin needs two items, so OPT ≤ floor(n/2); the greedy
    pairing certificate and the volume bound sandwich the exact value.
    """
    if not 1 <= n <= 14:
        raise BadParams(f"exact OPT on uniform items is limited to n ≤ 14, got {n}")
    seed = get_settings().default_seed if seed is None else seed
    report = ExperimentReport("uniform_opt_check", {"n": n, "trials": trials}, seed)
    children = np.random.SeedSequence(seed).spawn(trials)
    opts = []
    for t, child in enumerate(children):
        seq = uniform_sequence(n, int(child.generate_state(1)[0]))
        opt = opt_exact(seq)
        greedy = greedy_pairing_lower_bound(seq).claimed_covered
        opts.append(opt)
        report.records.append({"trial": t, "opt": opt, "greedy": greedy, "volume_bound": opt_volume_bound(seq)})
        report.expect(f"trial {t}: greedy ≤ OPT", greedy, opt, Source.ORACLE, relation="ge")
        report.expect(f"trial {t}: OPT ≤ volume bound", opt_volume_bound(seq), opt, Source.ORACLE, relation="le")
        report.expect(f"trial {t}: OPT ≤ floor(n/2)", n // 2, opt, Source.ORACLE, relation="le")
    report.summary = {"mean_opt": float(np.mean(opts)), "n_over_2": expected_opt_uniform(n)}
    return report
