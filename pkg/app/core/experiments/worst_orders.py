"""Worst-order drivers: the relative worst order family and exhaustive small multisets."""

from fractions import Fraction
from itertools import combinations_with_replacement

from app.core.algorithms import AlgorithmId
from app.core.generators import gen_rwor
from app.core.items import Sequence, format_rational
from app.core.worst_order import worst_order_value

from .report import ExperimentReport, Source, timed

RWOR_SIZES = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 6))


def multisets(sizes: tuple[Fraction, ...], max_items: int, min_items: int = 1):
    """Every multiset over `sizes` with between min_items and max_items items."""
    for count in range(min_items, max_items + 1):
        for combo in combinations_with_replacement(sizes, count):
            yield Sequence(combo)


@timed
def run_rwor_experiment(ns: list[int], k: int = 2) -> ExperimentReport:
    """DHk_W / DNF_W on the relative worst order family, which tends to 3/2 from below."""
    report = ExperimentReport("rwor", {"ns": ns, "k": k})
    previous = None
    for n in ns:
        family = gen_rwor(n, k)
        dnf_w = worst_order_value(AlgorithmId.DNF, family.seq).value
        dhk_w = worst_order_value(AlgorithmId.DHK, family.seq, k=k).value
        ratio = Fraction(dhk_w, dnf_w)
        report.records.append({"n": n, "dnf_w": dnf_w, "dhk_w": dhk_w, "ratio": ratio})
        report.expect(f"n={n}: DNF_W", 2 * n, dnf_w, Source.THEORY)
        report.expect(f"n={n}: DH{k}_W", 3 * n - 1, dhk_w, Source.THEORY)
        report.expect(f"n={n}: ratio below 3/2", Fraction(3, 2), ratio, Source.THEORY, relation="le")
        if previous is not None:
            report.expect(f"n={n}: ratio increases", previous, ratio, Source.THEORY, relation="ge")
        previous = ratio
    return report


@timed
def run_worst_order_suite(
    sizes: tuple[Fraction, ...] = RWOR_SIZES,
    max_items: int = 8,
    ks: tuple[int, ...] = (2, 3),
) -> ExperimentReport:
    """
    Worst orders of every small multiset over `sizes`.

    Checks DHk_W ≥ DNF_W - (k-1) and DHk_W ≤ (3/2)·DNF_W + 1 on each.
    """
    report = ExperimentReport(
        "worst_order_suite", {"sizes": [format_rational(x) for x in sizes], "max_items": max_items, "ks": list(ks)}
    )
    checked = 0
    worst_ratio = Fraction(0)
    for multiset in multisets(sizes, max_items):
        dnf_w = worst_order_value(AlgorithmId.DNF, multiset).value
        for k in ks:
            dhk_w = worst_order_value(AlgorithmId.DHK, multiset, k=k).value
            checked += 1
            if dnf_w:
                worst_ratio = max(worst_ratio, Fraction(dhk_w, dnf_w))
            if dhk_w < dnf_w - (k - 1) or 2 * dhk_w > 3 * dnf_w + 2:
                report.records.append(
                    {"multiset": [format_rational(x) for x in multiset], "k": k, "dnf_w": dnf_w, "dhk_w": dhk_w}
                )
    report.summary = {"pairs_checked": checked, "max_ratio": worst_ratio}
    report.expect("multisets breaking a bound", 0, len(report.records), Source.THEORY)
    return report
