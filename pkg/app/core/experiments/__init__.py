"""
Experiment drivers.

Each driver builds its inputs from generators, runs the engines and oracles,
and returns an ExperimentReport whose expectations name where the expected
value comes from. Exact drivers are reproducible bit for bit; Monte Carlo
drivers are reproducible for a fixed seed whatever the worker count.
"""

from typing import Callable

from .minmin import run_minmin_experiment
from .reasonable import run_reasonable_check
from .report import Expectation, ExperimentReport, Source
from .sweep import run_interval_sweep
from .two_size import ratio_vs_k_series, ratio_vs_n_series, run_random_order_experiment
from .uniform import MAX_UNIFORM_ITEMS, run_uniform_experiment, run_uniform_opt_check
from .worst_orders import RWOR_SIZES, multisets, run_rwor_experiment, run_worst_order_suite

EXPERIMENTS: dict[str, Callable[..., ExperimentReport]] = {
    "uniform": run_uniform_experiment,
    "uniform_opt_check": run_uniform_opt_check,
    "random_order": run_random_order_experiment,
    "interval_sweep": run_interval_sweep,
    "rwor": run_rwor_experiment,
    "worst_order_suite": run_worst_order_suite,
    "minmin": run_minmin_experiment,
    "reasonable": run_reasonable_check,
}

__all__ = [
    "EXPERIMENTS",
    "MAX_UNIFORM_ITEMS",
    "RWOR_SIZES",
    "Expectation",
    "ExperimentReport",
    "Source",
    "multisets",
    "ratio_vs_k_series",
    "ratio_vs_n_series",
    "run_interval_sweep",
    "run_minmin_experiment",
    "run_random_order_experiment",
    "run_reasonable_check",
    "run_rwor_experiment",
    "run_uniform_experiment",
    "run_uniform_opt_check",
    "run_worst_order_suite",
]
