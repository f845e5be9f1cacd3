from .algorithms import AlgorithmId, DualHarmonic, DualNextFit, HarmonicConfig, covered_count, run_algorithm
from .analytic import eru_dhk, eru_dnf, eru_limit, mu
from .experiments import EXPERIMENTS, ExperimentReport
from .generators import (
    GeneratedFamily,
    gen_dhk_one_border,
    gen_dhk_two_border,
    gen_dnf_one_border,
    gen_dnf_two_border,
    gen_rwor,
)
from .intervals import IntervalSpec, competitive_table, minmin_ratio_dnf, minmin_ratios
from .items import Sequence, parse_sequence, read_sequence, write_sequence
from .markov import MarkovChain, markov_stationary
from .oracles import PartitionCertificate, opt_exact, verify_certificate
from .packing import Packing, PackingTrace, validate_reasonable, verify_packing
from .random_order import exact_expected_dnf_two_size, random_order_estimate
from .sampling import RatioEstimate
from .worst_order import relative_worst_order, worst_order_value
