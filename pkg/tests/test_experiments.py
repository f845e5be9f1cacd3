from fractions import Fraction

import pytest

from app.cli.commands.report import DEFAULT_INTERVALS
from app.core.algorithms import AlgorithmId
from app.core.experiments import (
    EXPERIMENTS,
    Expectation,
    ExperimentReport,
    Source,
    ratio_vs_k_series,
    ratio_vs_n_series,
    run_interval_sweep,
    run_minmin_experiment,
    run_random_order_experiment,
    run_reasonable_check,
    run_rwor_experiment,
    run_uniform_experiment,
    run_uniform_opt_check,
    run_worst_order_suite,
)
from app.core.random_order import exact_expected_dnf_two_size
from app.exceptions import BadParams, ExpectationFailure, MissingProvenance


def test_rwor_ratios_grow_toward_three_halves():
    report = run_rwor_experiment([1, 2, 5])
    assert report.passed
    assert [r["ratio"] for r in report.records] == [Fraction(1), Fraction(5, 4), Fraction(14, 10)]
    assert report.wall_clock is not None


def test_interval_sweep_defaults():
    report = run_interval_sweep(list(DEFAULT_INTERVALS), 60)
    assert report.passed, [e.name for e in report.failures]
    ratios = [(r["dnf_family_ratio"], r["dhk_family_ratio"]) for r in report.records]
    assert ratios == [
        (Fraction(2, 3), Fraction(5, 6)),
        (Fraction(3, 4), Fraction(5, 6)),
        (Fraction(12, 17), Fraction(47, 60)),
    ]


def test_minmin_gap_shrinks():
    report = run_minmin_experiment(2, Fraction(3, 5))
    assert report.passed
    assert report.summary["closed_form"] == Fraction(15, 16)
    assert [r["eps"] for r in report.records] == [Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10_000)]


def test_uniform_opt_check():
    report = run_uniform_opt_check(8, 3, seed=1)
    assert report.passed
    assert len(report.records) == 3
    assert all(r["greedy"] <= r["opt"] <= 4 for r in report.records)


def test_uniform_opt_check_size_limit():
    with pytest.raises(BadParams):
        run_uniform_opt_check(20, 1)


def test_reasonable_check():
    report = run_reasonable_check(max_items=4)
    assert report.passed
    assert report.summary["runs_checked"] > 0


def test_worst_order_suite_small():
    report = run_worst_order_suite(max_items=5)
    assert report.passed
    assert report.summary["max_ratio"] <= Fraction(3, 2)


@pytest.mark.slow
def test_worst_order_suite_full():
    assert run_worst_order_suite(max_items=8).passed


def test_random_order_summary():
    report = run_random_order_experiment(20, 20, samples=500, seed=3)
    summary = report.summary
    assert summary["opt"] == 20
    assert summary["dnf_exact"] == exact_expected_dnf_two_size(20, 20)
    assert summary["dhk"] == 10
    assert summary["dhk_ratio"] == Fraction(1, 2)
    assert summary["dhk_order_independent"]
    assert [e.name for e in report.expectations] == ["DNF Monte Carlo mean vs exact DP"]


def test_uniform_report_is_reproducible():
    first = run_uniform_experiment(AlgorithmId.DNF, 1, 2000, 4, seed=9)
    again = run_uniform_experiment(AlgorithmId.DNF, 1, 2000, 4, seed=9)
    assert first.records == again.records
    assert first.to_model().wall_clock is None
    assert first.to_model(timing=True).wall_clock is not None


@pytest.mark.slow
@pytest.mark.parametrize(
    "alg, k, tolerance",
    [(AlgorithmId.DNF, 1, 0.005), (AlgorithmId.DHK, 2, 0.005), (AlgorithmId.DHK, 50, 0.01)],
)
def test_uniform_ratio_matches_analytic(alg, k, tolerance):
    report = run_uniform_experiment(alg, k, 100_000, 20, tolerance=tolerance)
    assert report.passed
    assert abs(report.summary["estimate"]["point"] - float(report.summary["analytic"])) <= tolerance


def test_plot_series():
    by_n = ratio_vs_n_series([10, 20])
    assert by_n[0]["n"] == 10
    assert by_n[0]["dhk_ratio"] == pytest.approx(2 / 5)
    by_k = ratio_vs_k_series([2])
    assert by_k[0]["dhk_ratio"] == pytest.approx(0.714097, abs=1e-6)


@pytest.mark.parametrize(
    "relation, expected, observed, tolerance, passed",
    [
        ("eq", 3, 3, None, True),
        ("eq", 0.5, 0.52, 0.05, True),
        ("eq", 0.5, 0.6, 0.05, False),
        ("le", 3, 4, None, False),
        ("le", 3, 4, 1, True),
        ("ge", 3, 4, None, True),
        ("ge", 3, 2, None, False),
    ],
)
def test_expectation_relations(relation, expected, observed, tolerance, passed):
    assert Expectation("x", expected, observed, Source.ORACLE, tolerance, relation).passed is passed


def test_expectation_model_marks_relation():
    model = Expectation("x", Fraction(3, 2), Fraction(4, 3), Source.THEORY, relation="le").to_model()
    assert model.expected == "≤ 3/2"
    assert model.observed == "4/3"
    assert model.source == "theory"


def test_expectation_needs_a_source():
    report = ExperimentReport("x")
    with pytest.raises(MissingProvenance):
        report.expect("value", 1, 1, None)


def test_failures_raise():
    report = ExperimentReport("x")
    report.expect("value", 1, 2, Source.ORACLE)
    assert not report.passed
    with pytest.raises(ExpectationFailure):
        report.raise_for_failures()


def test_registry():
    assert set(EXPERIMENTS) == {
        "uniform",
        "uniform_opt_check",
        "random_order",
        "interval_sweep",
        "rwor",
        "worst_order_suite",
        "minmin",
        "reasonable",
    }
