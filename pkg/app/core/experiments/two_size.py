"""Random-order driver on two-size multisets, plus the plot-data series."""

from fractions import Fraction
from typing import Any

from app.config import get_settings
from app.core.algorithms import AlgorithmId, covered_count, is_order_independent
from app.core.analytic import eru_dhk, eru_dnf
from app.core.generators import default_eps, gen_two_size
from app.core.oracles import opt_two_size
from app.core.random_order import TWO_SIZE_DP_LIMIT, exact_expected_dnf_two_size, random_order_estimate
from app.exceptions import BadEps, BadParams

from .report import ExperimentReport, Source, timed


@timed
def run_random_order_experiment(
    l: int,
    s: int,
    eps: Fraction | int | str | None = None,
    samples: int = 1000,
    seed: int | None = None,
    k: int = 2,
    jobs: int | None = None,
    sigmas: float | None = None,
) -> ExperimentReport:
    """
    DNF and DHk on l items of size 1-eps and s of size eps in random order.

    Reports the Monte Carlo DNF mean, the exact DP expectation, OPT and both
    ratios.
    """
    n = l + s
    if l < 0 or s < 0:
        raise BadParams(f"counts must be nonnegative, got l={l}, s={s}")
    bound = Fraction(1, n) if n else Fraction(1)
    eps = default_eps(bound) if eps is None else Fraction(eps)
    if not 0 < eps < bound:
        raise BadEps(f"need 0 < eps < 1/(l+s) = {bound}, got {eps}")
    settings = get_settings()
    seed = settings.default_seed if seed is None else seed
    sigmas = sigmas or settings.tolerance_sigmas

    multiset = gen_two_size(None, eps, seed, counts=(l, s))
    opt = opt_two_size(l, s, eps)
    report = ExperimentReport("random_order", {"l": l, "s": s, "eps": eps, "samples": samples, "k": k}, seed)

    dhk = covered_count(AlgorithmId.DHK, multiset, k)
    exact = exact_expected_dnf_two_size(l, s) if n <= TWO_SIZE_DP_LIMIT else None
    estimate = None
    if n:
        estimate = random_order_estimate(AlgorithmId.DNF, multiset, samples, seed, opt=opt or None, jobs=jobs)

    report.summary = {
        "opt": opt,
        "dnf_exact": exact,
        "dnf_estimate": None if estimate is None else estimate.to_model().model_dump(),
        "dnf_ratio": None if exact is None or not opt else exact / opt,
        "dhk": dhk,
        "dhk_ratio": Fraction(dhk, opt) if opt else None,
        "dhk_order_independent": is_order_independent(multiset, k),
    }

    if estimate is not None and exact is not None:
        allowed = sigmas * estimate.standard_error
        report.expect("DNF Monte Carlo mean vs exact DP", float(exact), estimate.point, Source.ORACLE, allowed)
    if l == s and l >= 1000 and exact is not None:
        report.expect("DNF random-order ratio", Fraction(4, 5), float(exact / opt), Source.THEORY, 0.01)
        report.expect(f"DH{k} random-order ratio", Fraction(1, 2), float(Fraction(dhk, opt)), Source.THEORY, 0.01)
    if s == 0 and exact is not None:
        report.expect("DNF on larges only equals OPT", opt, exact, Source.ORACLE)
    if l == 0:
        report.expect("smalls alone cover nothing", 0, dhk, Source.ORACLE)
    return report


def ratio_vs_n_series(ns: list[int]) -> list[dict[str, Any]]:
    """Exact DNF and DHk random-order ratios on l = s = n/2 two-size multisets."""
    rows = []
    for n in ns:
        half = n // 2
        opt = opt_two_size(half, half, default_eps(Fraction(1, 2 * half)))
        exact = exact_expected_dnf_two_size(half, half)
        rows.append({"n": 2 * half, "dnf_ratio": float(exact / opt), "dhk_ratio": float(Fraction(half // 2, opt))})
    return rows


def ratio_vs_k_series(ks: list[int]) -> list[dict[str, Any]]:
    """Analytic uniform-distribution ratios of DHk against the DNF reference."""
    reference = float(eru_dnf())
    return [{"k": k, "dhk_ratio": float(eru_dhk(k).total), "dnf_ratio": reference} for k in ks]
