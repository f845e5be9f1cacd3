from fractions import Fraction

import pytest
from mpmath import mp, mpf

from app.core.analytic import (
    eru_dhk,
    eru_dnf,
    eru_limit,
    harmonic_mass,
    mu,
    r_large,
    r_large_alt,
    r_large_direct,
    r_small,
    trigamma_int,
)
from app.exceptions import BadParams, PrecisionLoss


def test_mu_two():
    with mp.workdps(30):
        assert abs(mu(2).value - (mp.e**2 - mp.e)) < mpf(10) ** -25


def test_mu_one_gives_next_fit():
    with mp.workdps(30):
        assert abs(r_small(1) - eru_dnf()) < mpf(10) ** -25


@pytest.mark.parametrize("m", [1, 2, 5, 17])
def test_trigamma(m):
    with mp.workdps(30):
        assert abs(trigamma_int(m) - mp.psi(1, m)) < mpf(10) ** -25


def test_r_large_two():
    with mp.workdps(30):
        assert abs(r_large(2) - mpf(1) / 2) < mpf(10) ** -25


@pytest.mark.parametrize("k", range(2, 51))
def test_r_large_forms_agree(k):
    with mp.workdps(30):
        direct = r_large_direct(k)
        exact = mpf(direct.numerator) / direct.denominator
        assert abs(r_large(k) - exact) < mpf(10) ** -25
        assert abs(r_large_alt(k) - exact) < mpf(10) ** -25


def test_r_large_increases():
    values = [r_large_direct(k) for k in range(2, 30)]
    assert values == sorted(values)


def test_dh2_total():
    row = eru_dhk(2)
    assert float(row.total) == pytest.approx(0.714097, abs=1e-6)
    assert float(row.r_small) == pytest.approx(0.214097, abs=1e-6)


def test_dh50_near_limit():
    assert float(eru_dhk(50).total) == pytest.approx(0.710132, abs=1e-6)
    assert float(eru_limit()) == pytest.approx(0.710132, abs=1e-6)


def test_row_model_is_text():
    model = eru_dhk(2).to_model(digits=6)
    assert model.total == "0.714097"
    assert model.reference == "0.735759"


def test_precision_cap():
    with pytest.raises(PrecisionLoss):
        mu(60, max_working_dps=20)


def test_argument_checks():
    with pytest.raises(BadParams):
        mu(0)
    with pytest.raises(BadParams):
        eru_dhk(1)
    with pytest.raises(BadParams):
        harmonic_mass(1)
    assert harmonic_mass(3) == Fraction(1, 6)
