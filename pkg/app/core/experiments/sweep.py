"""Family ratios on restricted intervals against their competitive tables."""

from dataclasses import dataclass
from fractions import Fraction

from app.core.generators import (
    GeneratedFamily,
    default_eps,
    gen_dhk_one_border,
    gen_dhk_two_border,
    gen_dhk_two_border_small_b,
    gen_dnf_one_border,
    gen_dnf_two_border,
)
from app.core.intervals import BorderCase, IntervalSpec, competitive_table, two_border_threshold

from .report import ExperimentReport, Source, timed


@dataclass(frozen=True)
class _SweepFamilies:
    dnf: GeneratedFamily | None
    dhk: GeneratedFamily
    note: str = ""


def _eps_for(spec: IntervalSpec, border: Fraction, n: int) -> Fraction:
    room = min(border - spec.a, spec.b - border, Fraction(1, spec.p * (spec.p + 1) * max(n, 1)))
    return default_eps(room)


def _sweep_families(spec: IntervalSpec, n: int) -> _SweepFamilies:
    p = spec.p
    if spec.case is BorderCase.ONE:
        eps = _eps_for(spec, Fraction(1, p), n)
        return _SweepFamilies(gen_dnf_one_border(p, n, eps), gen_dhk_one_border(p, n, k=p, interval=spec))
    if spec.b <= two_border_threshold(p):
        eps = _eps_for(spec, Fraction(1, p + 1), n)
        return _SweepFamilies(gen_dnf_one_border(p + 1, n, eps), gen_dhk_two_border_small_b(p, n, k=p + 1))
    dnf = gen_dnf_two_border(p, n) if p >= 3 else None
    note = "" if dnf is not None else "no two-border DNF family for p = 2"
    return _SweepFamilies(dnf, gen_dhk_two_border(p, n, k=p + 1), note)


def _family_ratio(family: GeneratedFamily, subject: str) -> Fraction:
    opt = family.observed["OPT"]
    label = next(c.label for c in family.claims if c.subject == subject)
    return Fraction(family.observed[label], opt)


@timed
def run_interval_sweep(specs: list[IntervalSpec], n: int) -> ExperimentReport:
    """
    Family ratios on each interval against its competitive table.

    DHk families must match the exact DHk ratio to within 3/n; DNF families
    must not beat the DNF entry (it is exact on one border and an upper bound
    on two).
    """
    report = ExperimentReport("interval_sweep", {"specs": [str(s) for s in specs], "n": n})
    for spec in specs:
        table = competitive_table(spec)
        families = _sweep_families(spec, n)
        dnf_entry, dhk_entry = table.entry("DNF"), table.entry("DHk")
        dhk_ratio = _family_ratio(families.dhk, "DHk")
        dnf_ratio = None if families.dnf is None else _family_ratio(families.dnf, "DNF")
        report.records.append(
            {
                "interval": str(spec),
                "p": spec.p,
                "case": table.case,
                "dnf_bound": dnf_entry.ratio,
                "dnf_bound_kind": dnf_entry.kind,
                "dnf_family": None if families.dnf is None else families.dnf.family,
                "dnf_family_ratio": dnf_ratio,
                "dhk_exact": dhk_entry.ratio,
                "dhk_family": families.dhk.family,
                "dhk_family_ratio": dhk_ratio,
                "dhk_better": table.dhk_better,
                "note": families.note,
            }
        )
        report.expect(f"{spec}: DHk family ratio", dhk_entry.ratio, dhk_ratio, Source.THEORY, Fraction(3, max(n, 1)))
        if dnf_ratio is not None:
            report.expect(f"{spec}: DNF family ratio", dnf_entry.ratio, dnf_ratio, Source.THEORY, relation="le")
        report.expect(f"{spec}: DHk beats DNF", True, table.dhk_better, Source.THEORY)
    return report
