"""Min/min driver: per-volume worst cases as eps shrinks."""

from fractions import Fraction

from app.core.generators import MinMinOptKind, gen_minmin_opt_worst, gen_minmin_worst, minmin_default_eps
from app.core.intervals import IntervalSpec, minmin_ratio_dnf
from app.core.items import format_rational, volume

from .report import ExperimentReport, Source, timed


@timed
def run_minmin_experiment(
    p: int,
    b: Fraction | int | str,
    eps_list: list[Fraction] | None = None,
    bins: int = 10,
    a: Fraction | int | str = 0,
) -> ExperimentReport:
    """
    Per-volume DNF worst case against the per-volume OPT worst case as eps shrinks.

    The gap to the closed form must shrink along `eps_list` (largest first).
    """
    spec = IntervalSpec.of(a, b)
    b = spec.b
    closed_form = minmin_ratio_dnf(spec).ratio
    if eps_list is None:
        first = minmin_default_eps(p, b, spec.a)
        eps_list = [first, first / 10, first / 100]
    eps_list = sorted((Fraction(e) for e in eps_list), reverse=True)

    report = ExperimentReport("minmin", {"p": p, "a": spec.a, "b": b, "bins": bins, "eps": eps_list})
    gaps = []
    for eps in eps_list:
        dnf_family = gen_minmin_worst(p, b, eps, bins, spec.a)
        opt_families = [gen_minmin_opt_worst(p, b, eps, bins, kind, spec.a) for kind in MinMinOptKind]
        dnf_rate = Fraction(dnf_family.observed["DNF"], volume(dnf_family.seq))
        opt_rate = min(Fraction(f.observed["OPT"], volume(f.seq)) for f in opt_families)
        ratio = dnf_rate / opt_rate
        gap = abs(ratio - closed_form)
        gaps.append(gap)
        report.records.append({"eps": eps, "dnf_per_volume": dnf_rate, "opt_per_volume": opt_rate, "ratio": ratio})
    report.summary = {"closed_form": closed_form, "dhk_ratio": 1}
    for before, after, eps in zip(gaps, gaps[1:], eps_list[1:]):
        report.expect(f"gap shrinks at eps={format_rational(eps)}", before, after, Source.THEORY, relation="le")
    return report
