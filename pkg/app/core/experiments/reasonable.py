from fractions import Fraction

from app.core.algorithms import AlgorithmId, algorithm_label, get_algorithm
from app.core.items import format_rational
from app.core.oracles import opt_exact, reasonable_lower_bound
from app.core.packing import validate_reasonable
from app.core.worst_order import worst_order_value

from .report import ExperimentReport, Source, timed
from .worst_orders import RWOR_SIZES, multisets


@timed
def run_reasonable_check(
    sizes: tuple[Fraction, ...] = RWOR_SIZES,
    max_items: int = 6,
    k: int = 2,
) -> ExperimentReport:
    """
    Every small multiset: both engines produce reasonable traces and their
    worst orders keep A_W ≥ (OPT - c)/2 with c open bins.
    """
    report = ExperimentReport(
        "reasonable", {"sizes": [format_rational(x) for x in sizes], "max_items": max_items, "k": k}
    )
    checked = 0
    for multiset in multisets(sizes, max_items):
        opt = opt_exact(multiset)
        for alg in (AlgorithmId.DNF, AlgorithmId.DHK):
            packer = get_algorithm(alg, k, record=True).feed(multiset)
            verdict = validate_reasonable(packer.trace(), packer.max_open)
            worst = worst_order_value(alg, multiset, k=k).value
            bound = reasonable_lower_bound(opt, packer.max_open)
            checked += 1
            if not verdict or worst < bound:
                report.records.append(
                    {
                        "multiset": [format_rational(x) for x in multiset],
                        "algorithm": algorithm_label(alg, k),
                        "reasonable": bool(verdict),
                        "worst": worst,
                        "bound": bound,
                    }
                )
    report.summary = {"runs_checked": checked}
    report.expect("runs breaking reasonableness", 0, len(report.records), Source.THEORY)
    return report
