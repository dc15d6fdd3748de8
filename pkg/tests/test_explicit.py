import math

import mpmath
import numpy as np
import pytest

from gammaprimes.arithmetic import build_table, exact_sum
from gammaprimes.errors import DivergenceError, DomainError, PreconditionError
from gammaprimes.explicit import (ExplicitSpec, estimate_H, estimate_sigma_p, explicit_eval,
                                  explicit_pi, explicit_theta, frak_z, spec_for)
from gammaprimes.specfun import constants, ei_real

mpmath.mp.dps = 30


def mp_zero_sum(kind, x, ordinates):
    # reference sum over zeros and conjugates, term by term in mpmath
    L = mpmath.log(x)
    total = mpmath.mpf(0)
    for g in ordinates:
        rho = mpmath.mpc(0.5, g)
        if kind == "J":
            t = mpmath.ei(rho * L)
        elif kind == "psi":
            t = mpmath.power(x, rho) / rho
        elif kind == "J02":
            t = mpmath.power(x, rho) * (rho * L - 1) / rho**2
        elif kind == "K":
            t = mpmath.ei((1 + rho) * L)
        else:
            t = mpmath.power(x, 1 + rho) / (1 + rho)
        total += 2 * mpmath.re(t)
    return float(total)


@pytest.mark.parametrize("kind", ["J", "psi", "J02", "K", "epsilon"])
@pytest.mark.parametrize("x", [10.5, 1000.5, 54321.5])
def test_zero_sum_vs_mpmath(zeros, kind, x):
    got = explicit_eval(spec_for(kind, zeros), x).details["zeros"]
    want = -mp_zero_sum(kind, x, zeros.ordinates)
    assert got == pytest.approx(want, rel=1e-9, abs=1e-9 * x)


def test_psi_assembly(zeros):
    x = 100.5
    r = explicit_eval(spec_for("psi", zeros), x)
    want = x - mp_zero_sum("psi", x, zeros.ordinates) - math.log(2 * math.pi) \
        - 0.5 * math.log(1 - x**-2)
    assert r.value == pytest.approx(want, rel=1e-12)
    assert set(r.details) == {"main", "zeros", "constant", "trivial"}
    assert r.zeros_used == 100


def test_trivial_sums():
    x = 3.0
    L = math.log(x)
    c = constants()
    J = explicit_eval(ExplicitSpec(0, 0), x, zero_sum=False)
    want = -math.fsum(ei_real(-2 * k * L) for k in range(1, 200))
    assert J.details["trivial"] == pytest.approx(want, rel=1e-12)
    K = explicit_eval(ExplicitSpec(1, 0), x, zero_sum=False)
    want = -math.fsum(ei_real((1 - 2 * k) * L) for k in range(1, 200))
    assert K.details["trivial"] == pytest.approx(want, rel=1e-12)
    assert K.details["constant"] == pytest.approx(-c.C - 0.5)
    eps = explicit_eval(ExplicitSpec(1, 1), x, zero_sum=False)
    want = math.fsum(x ** (1 - 2 * k) / (2 * k - 1) for k in range(1, 200))
    assert eps.details["trivial"] == pytest.approx(want, rel=1e-14)
    j02 = explicit_eval(ExplicitSpec(0, 2), x, zero_sum=False)
    want = math.fsum((1 + 2 * k * L) / ((2 * k) ** 2 * x ** (2 * k)) for k in range(1, 200))
    assert j02.details["trivial"] == pytest.approx(want, rel=1e-12)
    assert j02.details["constant"] == c.D


def test_main_term_only():
    x = 500.5
    r = explicit_eval(spec_for("K"), x, zero_sum=False, trivial_sum=False, constant=False)
    assert r.value == ei_real(2 * math.log(x))
    r = explicit_eval(spec_for("epsilon"), x, zero_sum=False, trivial_sum=False, constant=False)
    assert r.value == x * x / 2


def test_main_terms_dominate_K_and_epsilon(zeros, table):
    for x in (1e3 + 0.5, 1e5 + 0.5):
        for name in ("K", "epsilon"):
            main = explicit_eval(spec_for(name, zeros), x, zero_sum=False,
                                 trivial_sum=False, constant=False).value
            rel = abs(exact_sum(table, name, x) - main) / main
            assert rel < (0.05 if x < 1e4 else 0.005)


def test_more_zeros_reduce_psi_error(zeros, table):
    grid = np.floor(np.linspace(10, 1000, 50)) + 0.5
    rms = []
    for z in (zeros.head(10), zeros.head(50), zeros):
        err = [explicit_eval(spec_for("psi", z), x).value - exact_sum(table, "psi", x) for x in grid]
        rms.append(np.sqrt(np.mean(np.square(err))))
    assert rms[0] > rms[1] > rms[2]


def test_explicit_pi_and_theta(zeros, table):
    for x in (30.5, 100.5, 500.5):
        assert round(explicit_pi(x, zeros, table)) == exact_sum(table, "pi", x)
        assert explicit_theta(x, zeros, table) == pytest.approx(exact_sum(table, "theta", x), rel=0.05)


def test_trunc_diagnostic(zeros):
    r = explicit_eval(spec_for("psi", zeros), 1000.5)
    g = zeros.ordinates[-1]
    assert r.trunc_bound <= 2 * math.sqrt(1000.5) / g + 1e-12


def test_errors(zeros):
    with pytest.raises(DomainError):
        explicit_eval(spec_for("psi", zeros), 2.0)
    with pytest.raises(PreconditionError):
        explicit_eval(spec_for("psi"), 10.5)
    with pytest.raises(DomainError):
        ExplicitSpec(2, 0)
    with pytest.raises(DomainError):
        spec_for("omega")
    with pytest.raises(DomainError):
        explicit_pi(1.5, zeros)
    with pytest.raises(PreconditionError):
        estimate_sigma_p(100.5, None)


def test_frak_z(table):
    want = -float(mpmath.primezeta(2))
    for s in (2.0, 2.5, 3.0):
        a = frak_z(s, "dirichlet", table)
        b = frak_z(s, "product", table)
        assert abs(a.value - b.value) <= 1e-8
        ref = -float(mpmath.primezeta(s))
        assert abs(a.details["log"] - ref) <= a.trunc_bound
    assert frak_z(2.0, "product", table).details["log"] == pytest.approx(want, abs=1e-6)
    assert frak_z(50.0, "product", table).value == pytest.approx(1.0, abs=1e-14)


def test_frak_z_errors(table):
    with pytest.raises(DivergenceError):
        frak_z(1.0, "product", table)
    with pytest.raises(PreconditionError):
        frak_z(2.0, "product", build_table(1000))
    with pytest.raises(DomainError):
        frak_z(2.0, "euler", table)


def test_estimates_main_term(table, zeros):
    x = 1e4
    from gammaprimes.moebius import avg_theta
    tb = avg_theta(x)
    assert estimate_sigma_p(x, None, zero_sum=False) == pytest.approx(ei_real(2 * math.log(tb)))
    assert estimate_H(x, None, zero_sum=False) == pytest.approx(tb * tb / 2)
    assert estimate_H(x, zeros, table) != estimate_H(x, None, table, zero_sum=False)


def test_k0_term_shifts_by_li(zeros):
    x = 250.5
    plain = explicit_eval(ExplicitSpec(1, 0, zeros), x)
    shifted = explicit_eval(ExplicitSpec(1, 0, zeros, include_k0=True), x)
    assert shifted.value == pytest.approx(plain.value - ei_real(math.log(x)), rel=1e-13)
