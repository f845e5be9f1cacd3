"""
Expected performance under i.i.d. uniform (0, 1) item sizes.

Everything here is evaluated with mpmath. Functions take `digits` (default
`analytic_digits`) and compute with guard digits on top; returned mpf values
keep their full working precision, so compare them under `mp.workdps`.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from app.config import get_settings
from app.exceptions import BadParams, PrecisionLoss
from app.models.schemas import AnalyticRow

logger = logging.getLogger(__name__)

GUARD_DIGITS = 10
LN10 = math.log(10)


def _digits(digits: int | None) -> int:
    return digits or get_settings().analytic_digits


def trigamma_int(m: int, digits: int | None = None) -> mpf:
    """ψ1(m) = π²/6 - sum_{i<m} 1/i² at a positive integer."""
    if m < 1:
        raise BadParams(f"trigamma_int needs m ≥ 1, got {m}")
    with mp.workdps(_digits(digits) + GUARD_DIGITS):
        return mp.pi**2 / 6 - mp.fsum(mpf(1) / (i * i) for i in range(1, m))


def _max_term_log10(k: int) -> float:
    """log10 of the largest |e^l (-l)^(k-l) / (k-l)!| over l = 1..k."""
    best = -math.inf
    for l in range(1, k + 1):
        size = l / LN10 + (k - l) * math.log10(l) - math.lgamma(k - l + 1) / LN10
        best = max(best, size)
    return best


@dataclass(frozen=True)
class MuValue:
    value: mpf
    error_bound: mpf
    working_dps: int


def mu(k: int, digits: int | None = None, max_working_dps: int | None = None) -> MuValue:
    """
    μ(k) = sum_{l=1}^{k} e^l (-l)^(k-l) / (k-l)!.

    The terms alternate in sign and grow far past the result, so the working
    precision is raised by the number of digits the largest term carries.
    Summation uses `mp.fsum`. The error bound is k rounding errors at the
    scale of the largest term.

    Raises:
        PrecisionLoss: the precision needed exceeds `mu_max_working_dps`, or
            the bound does not certify `digits` significant digits
    """
    if k < 1:
        raise BadParams(f"mu needs k ≥ 1, got {k}")
    digits = _digits(digits)
    max_working_dps = max_working_dps or get_settings().mu_max_working_dps
    magnitude = _max_term_log10(k)
    working = digits + GUARD_DIGITS + max(0, math.ceil(magnitude))
    if working > max_working_dps:
        raise PrecisionLoss(f"mu({k}) needs {working} working digits, above the cap of {max_working_dps}")

    with mp.workdps(working):
        terms = (mp.e**l * mpf(-l) ** (k - l) / mp.factorial(k - l) for l in range(1, k + 1))
        value = mp.fsum(terms)
        error = k * mpf(10) ** (math.ceil(magnitude) + 1 - working)
        if value <= 0 or error > abs(value) * mpf(10) ** (-digits):
            raise PrecisionLoss(f"mu({k}) = {mp.nstr(value, 8)} not certified to {digits} digits")
    logger.debug(f"mu({k}) at {working} digits, largest term 1e{magnitude:.1f}")
    return MuValue(value, error, working)


def r_small(k: int, digits: int | None = None) -> mpf:
    """Contribution 2/(μ(k) k) of the items below 1/k; k = 1 gives Dual Next-Fit's 2/e."""
    m = mu(k, digits)
    with mp.workdps(m.working_dps):
        return 2 / (m.value * k)


def r_large(k: int, digits: int | None = None) -> mpf:
    """Contribution 2(2 - 1/k - ψ1(1) + ψ1(k+1)) of the items in [1/k, 1)."""
    with mp.workdps(_digits(digits) + GUARD_DIGITS):
        return 2 * (2 - mpf(1) / k - trigamma_int(1, digits) + trigamma_int(k + 1, digits))


def r_large_alt(k: int, digits: int | None = None) -> mpf:
    """Same contribution written as 2((12-π²)/6 - (1+k)/k² + ψ1(k))."""
    with mp.workdps(_digits(digits) + GUARD_DIGITS):
        return 2 * ((12 - mp.pi**2) / 6 - mpf(1 + k) / (k * k) + trigamma_int(k, digits))


def r_large_direct(k: int) -> Fraction:
    """2 sum_{i=2}^{k} 1/(i²(i-1)), exactly."""
    return 2 * sum((Fraction(1, i * i * (i - 1)) for i in range(2, k + 1)), Fraction(0))


def harmonic_mass(i: int) -> Fraction:
    """Probability 1/(i-1) - 1/i that a uniform item falls in [1/i, 1/(i-1))."""
    if i < 2:
        raise BadParams(f"harmonic class index must be ≥ 2, got {i}")
    return Fraction(1, i * (i - 1))


def expected_opt_uniform(n: int) -> Fraction:
    """E[OPT] of n uniform items, taken as n/2."""
    return Fraction(n, 2)


@dataclass(frozen=True)
class EruBreakdown:
    k: int
    r_large: mpf
    r_small: mpf
    total: mpf
    error_bound: mpf

    def __post_init__(self) -> None:
        if not 0 < self.total < 1:
            raise PrecisionLoss(f"expected ratio {self.total} for k={self.k} outside (0, 1)")

    def to_model(self, digits: int | None = None) -> AnalyticRow:
        digits = digits or get_settings().float_digits
        return AnalyticRow(
            k=self.k,
            r_large=mp.nstr(self.r_large, digits),
            r_small=mp.nstr(self.r_small, digits),
            total=mp.nstr(self.total, digits),
            reference=mp.nstr(eru_dnf(), digits),
            error_bound=mp.nstr(self.error_bound, 3),
        )


def eru_dhk(k: int, digits: int | None = None) -> EruBreakdown:
    """
    Expected performance ratio of Dual Harmonic under uniform sizes.

    Args:
        k: Number of harmonic classes, ≥ 2
        digits: Significant digits to carry

    Returns:
        EruBreakdown with the large-item part, the small-item part and their sum
    """
    if k < 2:
        raise BadParams(f"eru_dhk needs k ≥ 2, got {k}")
    m = mu(k, digits)
    large = r_large(k, digits)
    with mp.workdps(m.working_dps):
        small = 2 / (m.value * k)
        total = large + small
        # relative error of 1/μ carries over to r_small
        error = small * m.error_bound / m.value
    return EruBreakdown(k, large, small, total, error)


def eru_dnf(digits: int | None = None) -> mpf:
    """Expected performance ratio 2/e of Dual Next-Fit."""
    with mp.workdps(_digits(digits) + GUARD_DIGITS):
        return 2 / mp.e


def eru_limit(digits: int | None = None) -> mpf:
    """Limit (12 - π²)/3 of the Dual Harmonic ratio as k grows."""
    with mp.workdps(_digits(digits) + GUARD_DIGITS):
        return (12 - mp.pi**2) / 3


def analytic_sweep(ks: list[int], digits: int | None = None) -> list[EruBreakdown]:
    rows = [eru_dhk(k, digits) for k in ks]
    logger.info(f"Analytic sweep over k = {ks[0]}..{ks[-1]}" if ks else "Analytic sweep over no k")
    return rows
