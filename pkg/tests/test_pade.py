import math

import numpy as np
import pytest
from scipy.interpolate import pade as scipy_pade

from pslet import CapacityError, DegeneratePadeError
from pslet.pade import fit_pade, resummed_energy
from pslet.riccati import EnergySeries


def test_geometric_series_is_reproduced_exactly():
    approx = fit_pade(np.ones(6), 2, 1)
    for x in (0.1, -0.7, 0.95):
        assert approx(x) == pytest.approx(1 / (1 - x), rel=1e-14)
    np.testing.assert_allclose(approx.den_coeffs, [1.0, -1.0], atol=1e-14)


def test_exponential_three_three():
    c = [1 / math.factorial(n) for n in range(7)]
    approx = fit_pade(c, 3, 3)
    for x in np.linspace(-1, 1, 9):
        ref = (120 + 60 * x + 12 * x * x + x**3) / (120 - 60 * x + 12 * x * x - x**3)
        assert approx(x) == pytest.approx(ref, rel=1e-13)
        assert approx(x) == pytest.approx(math.exp(x), rel=3e-5)


@pytest.mark.parametrize("N,M", [(3, 3), (3, 4), (2, 5), (4, 2)])
def test_agrees_with_scipy(N, M):
    rng = np.random.default_rng(N * 10 + M)
    c = rng.normal(size=N + M + 1)
    ours = fit_pade(c, N, M)
    p, q = scipy_pade(c, M, N)
    for x in (0.05, 0.2, -0.3):
        assert ours(x) == pytest.approx(p(x) / q(x), rel=1e-9)


def test_taylor_coefficients_match_input():
    c = np.array([0.3, -1.1, 0.7, 2.0, -0.4, 0.9, 1.3, -0.2])
    approx = fit_pade(c, 3, 4)
    np.testing.assert_allclose(approx.taylor(7), c, rtol=1e-9, atol=1e-12)


def test_degenerate_table_is_reported():
    # 1 + x**2 has a singular [1/1] block: no approximant matches c2
    with pytest.raises(DegeneratePadeError) as info:
        fit_pade([1.0, 0.0, 1.0], 1, 1)
    assert info.value.residual > 0


def test_too_short_series():
    with pytest.raises(CapacityError):
        fit_pade([1.0, 2.0], 1, 1)
    series = EnergySeries(e_minus2=1.0, corrections=(0.1,) * 5, lbar=3.0)
    with pytest.raises(CapacityError):
        resummed_energy(series, 3, 3)


def test_zero_series_gives_leading_term():
    series = EnergySeries(e_minus2=0.25, corrections=(0.0,) * 8, lbar=2.0, convention_factor=2.0)
    assert resummed_energy(series, 3, 4) == 2.0 * 1.0


def test_shift_conventions():
    # a geometric correction series is resummed exactly under both indexings
    lbar, r = 4.0, 0.5
    c = tuple(r**n for n in range(8))
    series = EnergySeries(e_minus2=0.1, corrections=c, lbar=lbar)
    exact = 0.1 * lbar**2 + 1 / (1 - r / lbar)
    assert resummed_energy(series, 3, 3, shift=1) == pytest.approx(exact, rel=1e-13)
    assert resummed_energy(series, 3, 3, shift=0) == pytest.approx(exact, rel=1e-13)
    assert resummed_energy(series, 3, 4) == pytest.approx(exact, rel=1e-13)


def test_shifted_fit_is_not_the_plain_fit():
    c = (0.8, -0.6, 0.9, -1.7, 3.1, -7.0, 16.0, -40.0)
    series = EnergySeries(e_minus2=0.0, corrections=c, lbar=1.5)
    assert resummed_energy(series, 3, 3, shift=1) != pytest.approx(resummed_energy(series, 3, 3, shift=0), rel=1e-6)


def test_minimal_geometric_coefficients():
    approx = fit_pade([1.0, 1.0, 1.0], 1, 1)
    np.testing.assert_allclose(approx.num_coeffs, [1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(approx.den_coeffs, [1.0, -1.0], atol=1e-15)


@pytest.mark.parametrize("N,M", [(0, 2), (3, 3), (3, 4)])
def test_identity_and_zero_series(N, M):
    one = fit_pade([1.0] + [0.0] * (N + M), N, M)
    zero = fit_pade([0.0] * (N + M + 1), N, M)
    for x in (0.0, 0.3, -0.8):
        assert one(x) == pytest.approx(1.0, abs=1e-15)
        assert zero(x) == 0.0
