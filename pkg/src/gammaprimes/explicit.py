"""Explicit formulas over truncated zeta-zero sums.

Each member J(x; r, i) of the hierarchy is split into a main term, a sum over
nontrivial zeros (paired with their conjugates as 2 Re), a constant and a
trivial-zero part.  The pieces can be switched off individually, which is
how the main-term and zero-free variants are obtained.

    (r, i)  function                       main term
    (0, 0)  J   = sum_{p^k<=x} 1/k          Ei(log x)
    (0, 1)  psi = sum_{n<=x} Lambda(n)      x
    (0, 2)  sum_{n<=x} Lambda(n) log n     x (log x - 1)
    (1, 0)  K   = sum_{p^k<=x} p^k/k       Ei(2 log x)
    (1, 1)  eps = sum_{n<=x} n Lambda(n)    x^2 / 2
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import ArithTable
from .errors import DivergenceError, DomainError, PreconditionError
from .gamma_series import EvalResult
from .moebius import MoebiusKind, Weight, avg_theta, mobius_transform
from .specfun import constants, ei_complex, ei_real
from .zeros import ZeroTable

HIERARCHY = {
    (0, 0): "J",
    (0, 1): "psi",
    (0, 2): "J02",
    (1, 0): "K",
    (1, 1): "epsilon",
}


@dataclass(frozen=True)
class ExplicitSpec:
    r: int
    i: int
    zeros: ZeroTable | None = None
    trivial_tol: float = 1e-12
    # K only: also subtract a k = 0 term Ei(log x); this biases K by -li(x)
    include_k0: bool = False

    def __post_init__(self):
        if (self.r, self.i) not in HIERARCHY:
            raise DomainError(f"(r, i) = ({self.r}, {self.i}) is not an implemented member")

    @property
    def name(self) -> str:
        return HIERARCHY[(self.r, self.i)]


def spec_for(name: str, zeros: ZeroTable | None = None, trivial_tol: float = 1e-12) -> ExplicitSpec:
    for key, val in HIERARCHY.items():
        if val == name:
            return ExplicitSpec(*key, zeros=zeros, trivial_tol=trivial_tol)
    raise DomainError(f"no explicit formula named {name!r}")


def _zero_terms(r: int, i: int, rho: np.ndarray, L: float) -> np.ndarray:
    """Per-zero contributions 2 Re(term(rho)), in table order."""
    if (r, i) == (0, 0):
        t = ei_complex(rho * L)
    elif (r, i) == (0, 1):
        t = np.exp(rho * L) / rho
    elif (r, i) == (0, 2):
        t = np.exp(rho * L) * (rho * L - 1.0) / rho**2
    elif (r, i) == (1, 0):
        t = ei_complex((1.0 + rho) * L)
    else:
        t = np.exp((1.0 + rho) * L) / (1.0 + rho)
    return 2.0 * t.real


def _ei_tail(start_k: int, step, L: float, tol: float) -> tuple[list, int]:
    """Terms Ei(step(k) * L) for k = start_k, ... until |term| < tol."""
    terms = []
    k = start_k
    while True:
        v = ei_real(step(k) * L)
        terms.append(v)
        if abs(v) < tol or k > 10_000:
            return terms, k
        k += 1


def _trivial(r: int, i: int, x: float, L: float, tol: float,
             include_k0: bool = False) -> tuple[float, int]:
    if (r, i) == (0, 0):
        terms, k = _ei_tail(1, lambda k: -2.0 * k, L, tol)
        return -math.fsum(terms), k
    if (r, i) == (0, 1):
        return -0.5 * math.log1p(-x**-2.0), 0
    if (r, i) == (0, 2):
        terms = []
        k = 0
        while True:
            k += 1
            t = (1.0 + 2 * k * L) / ((2 * k) ** 2 * x ** (2.0 * k))
            terms.append(t)
            if t < tol:
                return math.fsum(terms), k
    if (r, i) == (1, 0):
        # trivial zeros of zeta(s - 1) sit at s = 1 - 2k, k >= 1
        terms, k = _ei_tail(0 if include_k0 else 1, lambda k: 1.0 - 2.0 * k, L, tol)
        return -math.fsum(terms), k
    # sum_{k>=1} x^{1-2k}/(2k-1)
    return math.atanh(1.0 / x), 0


def _constant(r: int, i: int) -> float:
    c = constants()
    return {
        (0, 0): -math.log(2.0),
        (0, 1): -math.log(2.0 * math.pi),
        (0, 2): c.D,
        (1, 0): -c.C - 0.5,
        (1, 1): -c.C,
    }[(r, i)]


def _main(r: int, i: int, x: float, L: float) -> float:
    if (r, i) == (0, 0):
        return ei_real(L)
    if (r, i) == (0, 1):
        return x
    if (r, i) == (0, 2):
        return x * (L - 1.0)
    if (r, i) == (1, 0):
        return ei_real(2.0 * L)
    return 0.5 * x * x


def _evaluate(spec, x, zero_sum, trivial_sum, constant):
    r, i = spec.r, spec.i
    L = math.log(x)
    parts = {"main": _main(r, i, x, L)}
    terms_used = 0
    last = 0.0
    nz = 0
    if zero_sum:
        if spec.zeros is None or len(spec.zeros) == 0:
            raise PreconditionError("zero sum requested but no zeros supplied")
        contrib = _zero_terms(r, i, spec.zeros.rho(), L)
        parts["zeros"] = -math.fsum(contrib)
        nz = contrib.size
        last = abs(float(contrib[-1]))
    if constant:
        parts["constant"] = _constant(r, i)
    if trivial_sum:
        parts["trivial"], terms_used = _trivial(r, i, x, L, spec.trivial_tol,
                                                      spec.include_k0)
    return EvalResult(
        value=math.fsum(parts.values()),
        terms_used=terms_used,
        trunc_bound=last,
        zeros_used=nz,
        details=parts,
    )


def explicit_eval(spec: ExplicitSpec, x: float, *, zero_sum: bool = True,
                  trivial_sum: bool = True, constant: bool = True) -> EvalResult:
    """Evaluate the hierarchy member ``spec`` at x > 2.

    ``trunc_bound`` holds the magnitude of the last zero's contribution, a
    rough indicator of how far the truncated zero sum is from converging.
    Half-integer x keeps clear of the jumps, where a truncated zero sum
    converges to the midpoint.
    """
    if not x > 2:
        raise DomainError(f"explicit formulas need x > 2, got {x}")
    return _evaluate(spec, x, zero_sum, trivial_sum, constant)


def explicit_pi(x: float, zeros: ZeroTable, table: ArithTable | None = None) -> float:
    """pi(x) from the Moebius transform sum mu(m)/m J(x**(1/m)) of explicit J."""
    if not x > 2:
        raise DomainError(f"explicit_pi needs x > 2, got {x}")
    spec = ExplicitSpec(0, 0, zeros)

    def J(y):
        return _evaluate(spec, y, True, True, True).value

    return mobius_transform(J, x, MoebiusKind(Weight.WeightedByM, 1.0), table)


def explicit_theta(x: float, zeros: ZeroTable, table: ArithTable | None = None) -> float:
    """theta(x) = sum mu(m) psi(x**(1/m)) with explicit psi."""
    if not x > 2:
        raise DomainError(f"explicit_theta needs x > 2, got {x}")
    spec = ExplicitSpec(0, 1, zeros)

    def psi(y):
        return _evaluate(spec, y, True, True, True).value

    return mobius_transform(psi, x, MoebiusKind(Weight.Unweighted, 1.0), table)


# ---------------------------------------------------------------------------
# generating function  log z(s) = -sum_p p^{-s}


def frak_z(s: float, mode: str = "product", table: ArithTable | None = None) -> EvalResult:
    """Evaluate the prime generating function z(s) = prod_p exp(-p^{-s}).

    ``dirichlet`` sums mu(n) Lambda(n) / (log n n^s) over all prime powers
    n <= limit (only primes survive, since mu vanishes on higher powers);
    ``product`` multiplies Gamma(1, p^{-s}) = exp(-p^{-s}) over primes.
    ``trunc_bound`` bounds the omitted part of log z(s).
    """
    if not s > 1:
        raise DivergenceError(f"z(s) diverges for s <= 1, got {s}")
    if table is None or table.limit < 10**6:
        raise PreconditionError("frak_z needs a sieve table with limit >= 10**6")
    N = table.limit
    if mode == "dirichlet":
        n = table.pp_values
        mu = table.mu[n].astype(float)
        lam = np.log(table.pp_base.astype(float))
        nf = n.astype(float)
        terms = mu * lam / (np.log(nf) * nf**s)
        log_z = math.fsum(terms)
        used = int(n.size)
    elif mode == "product":
        p = table.primes().astype(float)
        log_z = -math.fsum(p**-s)
        used = int(p.size)
    else:
        raise DomainError(f"mode must be 'dirichlet' or 'product', got {mode!r}")
    bound = N ** (1.0 - s) / ((s - 1.0) * math.log(N))
    return EvalResult(value=math.exp(log_z), terms_used=used, trunc_bound=bound,
                      details={"log": log_z})


# ---------------------------------------------------------------------------
# estimates for the sum of primes and the prime entropy


def estimate_sigma_p(x: float, zeros: ZeroTable | None, table: ArithTable | None = None,
                     zero_sum: bool = True) -> float:
    """sum_{p<=x} p  ~  Ei(log theta_bar(x)^2) - sum_rho Ei(log x^{1+rho})."""
    if not x > 2:
        raise DomainError(f"estimate needs x > 2, got {x}")
    tb = avg_theta(x, table)
    value = ei_real(2.0 * math.log(tb))
    if zero_sum:
        if zeros is None:
            raise PreconditionError("zero sum requested but no zeros supplied")
        value -= math.fsum(_zero_terms(1, 0, zeros.rho(), math.log(x)))
    return value


def estimate_H(x: float, zeros: ZeroTable | None, table: ArithTable | None = None,
               zero_sum: bool = True) -> float:
    """sum_{p<=x} p log p  ~  theta_bar(x)^2 / 2 - sum_rho x^{1+rho}/(1+rho)."""
    if not x > 2:
        raise DomainError(f"estimate needs x > 2, got {x}")
    tb = avg_theta(x, table)
    value = 0.5 * tb * tb
    if zero_sum:
        if zeros is None:
            raise PreconditionError("zero sum requested but no zeros supplied")
        value -= math.fsum(_zero_terms(1, 1, zeros.rho(), math.log(x)))
    return value
