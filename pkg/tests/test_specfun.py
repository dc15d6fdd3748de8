import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from gammaprimes.errors import AccuracyLossError, BranchError, DomainError, PoleError
from gammaprimes.specfun import (constants, ei_complex, ei_complex_bounded, ei_real,
                                 ei_small_array, reg_lower_gamma_int, upper_gamma)

mpmath.mp.dps = 40


def p_oracle(n, z):
    # P(n, z) = 1 - e^{-z} sum_{k<n} z^k/k!, evaluated with 250 digits
    with mpmath.workdps(250):
        z = mpmath.mpf(z)
        s = mpmath.fsum(z**k / mpmath.factorial(k) for k in range(n))
        return float(1 - mpmath.exp(-z) * s)


@pytest.mark.parametrize("n", [1, 2, 5, 13, 14, 30, 80])
@pytest.mark.parametrize("z", [-math.log(1e6), -20.0, -1.0, -1e-3, 0.3, 5.0, 40.0])
def test_reg_lower_gamma_matches_high_precision(n, z):
    want = p_oracle(n, z)
    assert reg_lower_gamma_int(n, z) == pytest.approx(want, rel=1e-13, abs=1e-300)


def test_reg_lower_gamma_small_values():
    # P(n, z) for large n is tiny; the tail form keeps full relative accuracy
    assert reg_lower_gamma_int(40, 1.0) == pytest.approx(p_oracle(40, 1.0), rel=1e-13)
    assert reg_lower_gamma_int(3, 0.0) == 0.0


def test_reg_lower_gamma_errors():
    with pytest.raises(DomainError):
        reg_lower_gamma_int(0, 1.0)
    with pytest.raises(DomainError):
        reg_lower_gamma_int(2.5, 1.0)
    with pytest.raises(AccuracyLossError):
        reg_lower_gamma_int(3, -60.0)


@pytest.mark.parametrize("y", [-50, -5, -1, -0.5, -1e-6, 1e-6, 0.3, 1, 10, 39.9, 40.1, 100, 600])
def test_ei_real_vs_mpmath(y):
    # scipy.special.expi drifts to ~3e-14 just above 40, so mpmath is the reference
    assert ei_real(y) == pytest.approx(float(mpmath.ei(y)), rel=3e-15)


def test_ei_real_vs_quadrature():
    # Ei(y) - log y - gamma = int_0^y (e^t - 1)/t dt
    for y in (0.5, 3.0, 12.0):
        integral, _ = integrate.quad(lambda t: math.expm1(t) / t, 0, y, epsabs=1e-14)
        want = integral + math.log(y) + constants().euler_gamma
        assert ei_real(y) == pytest.approx(want, rel=1e-12)


def test_ei_real_errors():
    with pytest.raises(PoleError):
        ei_real(0.0)
    with pytest.raises(AccuracyLossError):
        ei_real(800.0)


@settings(max_examples=200, deadline=None)
@given(r=st.floats(0.01, 3000), phase=st.floats(0.001, 3.14))
def test_ei_complex_vs_mpmath(r, phase):
    z = r * complex(math.cos(phase), math.sin(phase))
    if z.real > 690:
        return
    want = complex(mpmath.ei(mpmath.mpc(z.real, z.imag)))
    got = ei_complex(z)
    assert abs(got - want) <= 1e-12 * abs(want) + 1e-300


def test_ei_complex_zero_arguments(zeros):
    # the arguments rho log x that the explicit formulas actually use
    rho = zeros.rho()
    for x in (10.5, 1000.5, 1e5):
        z = rho * math.log(x)
        got = ei_complex(z)
        want = np.array([complex(mpmath.ei(mpmath.mpc(v.real, v.imag))) for v in z])
        assert np.max(np.abs(got - want) / np.abs(want)) < 1e-12


def test_ei_complex_conjugate_symmetry():
    z = np.array([3 + 4j, 20 + 50j, -10 + 1j])
    assert np.allclose(ei_complex(z.conjugate()), ei_complex(z).conjugate(), rtol=1e-15)


def test_ei_complex_bound_reported():
    value, bound = ei_complex_bounded(100 + 30j)
    assert bound < 1e-10 * abs(value)


def test_ei_complex_errors():
    with pytest.raises(BranchError):
        ei_complex(-3.0 + 0j)
    with pytest.raises(AccuracyLossError):
        ei_complex(800 + 1j)


def test_ei_small_array():
    u = np.linspace(1e-4, 1, 50)
    assert np.allclose(ei_small_array(u), special.expi(u), rtol=1e-14)
    with pytest.raises(DomainError):
        ei_small_array(np.array([1.5]))


def test_upper_gamma():
    assert upper_gamma(1, 2.0) == pytest.approx(math.exp(-2.0))
    assert upper_gamma(1, -math.log(12.0)) == pytest.approx(12.0, rel=1e-15)
    assert upper_gamma(0, 1.5) == pytest.approx(special.exp1(1.5), rel=1e-14)
    # real principal value on the negative axis
    assert upper_gamma(0, -2.0) == pytest.approx(-special.expi(2.0), rel=1e-14)
    z = 2 + 3j
    assert upper_gamma(0, z) == pytest.approx(complex(mpmath.expint(1, z)), rel=1e-13)
    with pytest.raises(PoleError):
        upper_gamma(0, 0.0)
    with pytest.raises(DomainError):
        upper_gamma(2, 1.0)


def test_constants():
    c = constants()
    assert c.euler_gamma == pytest.approx(float(mpmath.euler), rel=1e-16)
    assert c.stieltjes_gamma1 == pytest.approx(float(mpmath.stieltjes(1)), rel=1e-15)
    assert c.glaisher_log == pytest.approx(float(mpmath.log(mpmath.glaisher)), rel=1e-15)
    assert c.C == pytest.approx(12 * float(mpmath.log(mpmath.glaisher)) - 1, rel=1e-15)
    # D is the derivative of zeta'/zeta at 0
    d = mpmath.diff(lambda s: mpmath.zeta(s, derivative=1) / mpmath.zeta(s), 0)
    assert c.D == pytest.approx(float(d), rel=1e-13)
