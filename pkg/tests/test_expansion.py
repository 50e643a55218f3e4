import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from pslet import NoHarmonicMinimumError, ValidationError
from pslet.expansion import frequency_w, leading_energy, solve_q0
from pslet.potentials import TaylorJet, eval_value, pure_coulomb, pure_ho, spiked_ho, taylor_jet, truncated_coulomb


@pytest.mark.parametrize("l", range(5))
def test_oscillator_point(l):
    pt = solve_q0(pure_ho(), l)
    assert pt.w == pytest.approx(2.0, rel=1e-14)
    assert pt.beta == pytest.approx(-1.5, rel=1e-14)
    assert pt.q0 == pytest.approx(math.sqrt(l + 1.5), rel=1e-14)


@pytest.mark.parametrize("l", range(5))
def test_coulomb_point(l):
    pt = solve_q0(pure_coulomb(), l)
    assert pt.w == pytest.approx(1.0, rel=1e-13)
    assert pt.q0 == pytest.approx((l + 1) ** 2, rel=1e-14)
    assert leading_energy(pt, pure_coulomb()) == pytest.approx(-1 / (2 * (l + 1) ** 2), rel=1e-13)


def _spiked_residual(q, a, b, l):
    # the expansion-point condition written out for V = (q^2 + a q^-b)/2
    w = math.sqrt((8 * q + a * b * (b - 2) * q ** (-(b + 1))) / (2 * q - a * b * q ** (-(b + 1))))
    return l + 0.5 * (1 + w) - q * q * math.sqrt(1 - a * b / 2 * q ** (-(b + 2)))


@pytest.mark.parametrize("a,b,l", [(1000, 2.0, 0), (1000, 0.5, 0), (0.005, 2.5, 0), (10, 6.0, 2)])
def test_spiked_point_against_explicit_equation(a, b, l):
    pt = solve_q0(spiked_ho(a, b), l)
    floor = (a * b / 2) ** (1 / (b + 2))
    ref = brentq(_spiked_residual, floor * (1 + 1e-12), 100, args=(a, b, l), xtol=1e-15, rtol=1e-15)
    assert pt.q0 == pytest.approx(ref, rel=1e-12)
    assert pt.beta == pytest.approx(-(1 + pt.w) / 2, rel=1e-14)


def test_b2_frequency_closed_form():
    # for b = 2: w = 2 q0^2 / sqrt(q0^4 - a) and sqrt(q0^4 - a) = l + (1 + w)/2
    a = 1000
    pt = solve_q0(spiked_ho(a, 2.0), 0)
    root = math.sqrt(pt.q0**4 - a)
    assert pt.w == pytest.approx(2 * pt.q0**2 / root, rel=1e-12)
    assert root == pytest.approx(0.5 * (1 + pt.w), rel=1e-12)


def test_first_order_term_vanishes_and_monotone_in_l():
    q0s = []
    for l in range(6):
        pt = solve_q0(truncated_coulomb(5), l)
        assert abs(pt.e_minus1) <= 1e-12 * pt.w / pt.q0**2
        q0s.append(pt.q0)
    assert np.all(np.diff(q0s) > 0)


def test_classical_energy_is_minimum_along_q():
    model, l = spiked_ho(10, 1.5), 1
    pt = solve_q0(model, l)

    def classical(q):
        return pt.lbar**2 / (2 * q * q) + eval_value(model, q)

    e0 = classical(pt.q0)
    for dq in (1e-3, -1e-3, 0.05, -0.05):
        assert classical(pt.q0 * (1 + dq)) > e0


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(0.001, 1000),
    b=st.floats(0.2, 8),
    l=st.integers(0, 8),
)
def test_point_equation_residual(a, b, l):
    model = spiked_ho(a, b)
    pt = solve_q0(model, l)
    jet = taylor_jet(model, pt.q0, 2)
    assert math.sqrt(pt.q0**3 * jet.coeffs[1]) == pytest.approx(pt.lbar, rel=1e-12)
    assert pt.q0 > model.q_floor


def test_excited_shift():
    pt = solve_q0(pure_ho(), 0, n_r=1)
    assert pt.beta == pytest.approx(-3.5)


def test_frequency_errors():
    with pytest.raises(NoHarmonicMinimumError):
        frequency_w(TaylorJet(1.0, np.array([0.0, 0.0, 1.0])))
    with pytest.raises(NoHarmonicMinimumError):
        frequency_w(TaylorJet(1.0, np.array([0.0, 1.0, -5.0])))


def test_input_validation():
    with pytest.raises(ValidationError):
        solve_q0(pure_ho(), -1)
    with pytest.raises(ValidationError):
        solve_q0(pure_ho(), 0, tol=0.0)
