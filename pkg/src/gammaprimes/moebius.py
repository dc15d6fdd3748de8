"""Weighted Moebius transforms over x -> x**(s/m) and the refined averages.

``mobius_transform`` sums coeff(m) f(x**(s/m)) for every m with
x**(s/m) >= 2.  For Ei-type integrands the dropped terms (arguments below 2)
do not vanish, so ``avg_pi1`` and ``avg_sigma_p`` add a tail estimate by
default; without it they are the plain truncated transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .arithmetic import ArithTable, build_table, mobius
from .errors import DomainError
from .specfun import EULER_GAMMA, ei_real, ei_small_array


class Weight(str, Enum):
    WeightedByM = "WeightedByM"  # mu(m)/m
    Unweighted = "Unweighted"  # mu(m)


@dataclass(frozen=True)
class MoebiusKind:
    kind: Weight = Weight.WeightedByM
    exponent_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Weight(self.kind))
        if not self.exponent_scale > 0:
            raise DomainError("exponent_scale must be positive")


def truncation_depth(x: float, s: float = 1.0) -> int:
    """Largest M with x**(s/M) >= 2 (0 when x**s < 2)."""
    if x <= 1:
        return 0
    depth = int(math.floor(s * math.log2(x)))
    # guard floating log2 at exact powers of two
    while depth >= 1 and x ** (s / depth) < 2:
        depth -= 1
    while x ** (s / (depth + 1)) >= 2:
        depth += 1
    return depth


def _mu(m, table):
    return mobius(m, table)


def mobius_transform(f, x: float, spec: MoebiusKind, table: ArithTable | None = None) -> float:
    """sum_{m=1}^{M} coeff(m) f(x**(s/m)), ascending m, M = truncation_depth(x, s)."""
    if not x > 1:
        raise DomainError(f"x must exceed 1, got {x}")
    s = spec.exponent_scale
    depth = max(truncation_depth(x, s), 1)
    terms = []
    for m in range(1, depth + 1):
        mu = _mu(m, table)
        if mu == 0:
            continue
        coeff = mu / m if spec.kind is Weight.WeightedByM else float(mu)
        terms.append(coeff * f(x ** (s / m)))
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# tail of sum mu(m)/m Ei(L/m) beyond the truncation depth

_TAIL_TERMS = 1 << 16


@lru_cache(maxsize=1)
def _tail_table():
    table = build_table(_TAIL_TERMS)
    m = np.arange(1, _TAIL_TERMS + 1)
    mu = table.mu[1:].astype(float)
    s0 = np.cumsum(mu / m)
    s1 = np.cumsum(mu * np.log(m) / m)
    s2 = np.cumsum(mu / m**2)
    return mu, s0, s1, s2


def ei_mobius_tail(log_x: float, depth: int) -> float:
    """Estimate sum_{m > depth} mu(m)/m Ei(log_x / m).

    Terms up to 2**16 are summed directly.  Beyond that Ei(u) is replaced by
    gamma + log u + u, and the mu sums are closed with the limits
    sum mu(m)/m = 0, sum mu(m) log(m)/m = -1 and sum mu(m)/m^2 = 6/pi^2.
    Requires log_x / (depth + 1) < 1, which holds whenever x**(1/(depth+1)) < 2.
    """
    mu, s0, s1, s2 = _tail_table()
    n = _TAIL_TERMS
    if depth >= n:
        return 0.0
    m = np.arange(depth + 1, n + 1, dtype=float)
    sel = mu[depth:] != 0
    u = log_x / m[sel]
    direct = math.fsum(mu[depth:][sel] / m[sel] * ei_small_array(u))
    rem0 = -s0[-1]
    rem1 = -1.0 - s1[-1]
    rem2 = 6.0 / math.pi**2 - s2[-1]
    rem = (EULER_GAMMA + math.log(log_x)) * rem0 - rem1 + log_x * rem2
    return direct + rem


@lru_cache(maxsize=4096)
def _cached_tail(log_x: float, depth: int) -> float:
    return ei_mobius_tail(log_x, depth)


def _ei_of_log(v):
    return ei_real(math.log(v))


def avg_pi1(x: float, table: ArithTable | None = None, tail: bool = True) -> float:
    """Refined average prime count: sum mu(m)/m Ei(log x / m).

    With ``tail`` this is Riemann's R(x); without it, the truncated sum.
    """
    if not x > 2:
        raise DomainError(f"avg_pi1 needs x > 2, got {x}")
    head = mobius_transform(_ei_of_log, x, MoebiusKind(Weight.WeightedByM, 1.0), table)
    if not tail:
        return head
    return head + _cached_tail(math.log(x), truncation_depth(x, 1.0))


def avg_sigma_p(x: float, table: ArithTable | None = None, tail: bool = True) -> float:
    """Refined average sum of primes: sum mu(m)/m Ei(2 log x / m)."""
    if not x > 1:
        raise DomainError(f"avg_sigma_p needs x > 1, got {x}")
    head = mobius_transform(_ei_of_log, x, MoebiusKind(Weight.WeightedByM, 2.0), table)
    if not tail:
        return head
    return head + _cached_tail(2 * math.log(x), truncation_depth(x, 2.0))


def avg_theta(x: float, table: ArithTable | None = None) -> float:
    """sum mu(m) x**(1/m) over x**(1/m) >= 2."""
    return mobius_transform(float, x, MoebiusKind(Weight.Unweighted, 1.0), table)


def avg_Hp(x: float, table: ArithTable | None = None) -> float:
    """Half of sum mu(m) x**(2/m) over x**(2/m) >= 2."""
    return 0.5 * mobius_transform(float, x, MoebiusKind(Weight.Unweighted, 2.0), table)


def gram_series(x: float, zeta=None, tol: float = 1e-17) -> float:
    """Riemann R(x) from the Gram series 1 + sum (log x)^k / (k k! zeta(k+1)).

    Independent of the Moebius sums above; ``zeta`` defaults to
    ``scipy.special.zeta``.
    """
    if zeta is None:
        from scipy.special import zeta
    L = math.log(x)
    terms = [1.0]
    t = 1.0
    k = 0
    while True:
        k += 1
        t *= L / k
        term = t / (k * zeta(k + 1))
        terms.append(term)
        if k > L and abs(term) < tol * abs(sum(terms)):
            break
    return math.fsum(terms)
