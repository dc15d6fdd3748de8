"""Sieve-backed arithmetic functions and exact summatory counts.

The table stores the smallest prime factor of every n <= limit, plus the
Moebius function and the sorted list of prime powers.  Summatory functions
are prefix sums over prime powers (or primes), accumulated in extended
precision and looked up by binary search, so each query is O(log N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import CapacityError, DomainError, RangeError
from .specfun import upper_gamma

MAX_LIMIT = 10**8
# d**r stays an exact double (and rounds correctly) below this
_EXACT_INT_BOUND = 2**50


class ExactFn(str, Enum):
    pi = "pi"
    J = "J"
    psi = "psi"
    theta = "theta"
    Ch = "Ch"
    K = "K"
    epsilon = "epsilon"
    sigma_p = "sigma_p"
    H_p = "H_p"
    omega = "omega"
    d_Lambda = "d_Lambda"
    LambdaLogSum = "LambdaLogSum"


# summatory functions that only count primes (k = 1)
_PRIME_ONLY = {ExactFn.pi, ExactFn.theta, ExactFn.sigma_p, ExactFn.H_p}
SUMMATORY = frozenset(ExactFn) - {ExactFn.Ch, ExactFn.omega, ExactFn.d_Lambda}


@dataclass(frozen=True, eq=False)
class ArithTable:
    """Smallest-prime-factor table for 0..limit.  Build with :func:`build_table`."""

    limit: int
    spf: np.ndarray
    mu: np.ndarray
    pp_values: np.ndarray  # prime powers p**k, ascending
    pp_base: np.ndarray
    pp_exp: np.ndarray
    _prefix: dict = field(default_factory=dict, repr=False)

    def _check(self, n):
        if n < 1:
            raise DomainError(f"expected a positive integer, got {n}")
        if n > self.limit:
            raise RangeError(f"{n} exceeds table limit {self.limit}")

    def is_prime(self, n: int) -> bool:
        self._check(n)
        return n >= 2 and int(self.spf[n]) == n

    def mobius(self, n: int) -> int:
        self._check(n)
        return int(self.mu[n])

    def von_mangoldt(self, n: int) -> float:
        self._check(n)
        if n < 2:
            return 0.0
        p = int(self.spf[n])
        m = n
        while m % p == 0:
            m //= p
        return math.log(p) if m == 1 else 0.0

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization as ascending (p, k) pairs."""
        self._check(n)
        out = []
        while n > 1:
            p = int(self.spf[n])
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        return out

    def primes(self) -> np.ndarray:
        return self.pp_values[self.pp_exp == 1]

    def _prefix_sums(self, fn: ExactFn) -> tuple[np.ndarray, np.ndarray]:
        if fn in self._prefix:
            return self._prefix[fn]
        if fn in _PRIME_ONLY:
            sel = self.pp_exp == 1
        else:
            sel = np.ones(self.pp_values.shape, dtype=bool)
        n = self.pp_values[sel].astype(np.longdouble)
        p = self.pp_base[sel].astype(np.longdouble)
        k = self.pp_exp[sel].astype(np.longdouble)
        logp = np.log(p)
        weights = {
            ExactFn.pi: np.ones_like(n),
            ExactFn.theta: logp,
            ExactFn.sigma_p: n,
            ExactFn.H_p: n * logp,
            ExactFn.J: 1.0 / k,
            ExactFn.psi: logp,
            ExactFn.K: n / k,
            ExactFn.epsilon: n * logp,
            ExactFn.LambdaLogSum: logp * k * logp,
        }[fn]
        cum = np.concatenate(([np.longdouble(0)], np.cumsum(weights)))
        entry = (self.pp_values[sel], cum)
        self._prefix[fn] = entry
        return entry


def _sieve_spf(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p::p]
            seg[seg == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[0] = 0
    if limit >= 1:
        spf[1] = 1
    return spf


def _mobius_from_spf(spf: np.ndarray) -> np.ndarray:
    size = spf.size
    mu = np.ones(size, dtype=np.int8)
    mu[0] = 0
    rem = np.arange(size, dtype=np.int64)
    idx = np.flatnonzero(rem > 1)
    while idx.size:
        r = rem[idx]
        p = spf[r].astype(np.int64)
        q = r // p
        square = q % p == 0
        mu[idx] = np.where(square, 0, -mu[idx])
        q[square] = 1
        rem[idx] = q
        idx = idx[q > 1]
    return mu


def build_table(limit: int) -> ArithTable:
    """Sieve smallest prime factors, Moebius values and prime powers up to ``limit``."""
    if int(limit) != limit or not 2 <= limit <= MAX_LIMIT:
        raise CapacityError(f"sieve limit must be an integer in [2, {MAX_LIMIT}], got {limit}")
    limit = int(limit)
    spf = _sieve_spf(limit)
    mu = _mobius_from_spf(spf)

    primes = np.flatnonzero(spf[2:] == np.arange(2, limit + 1)) + 2
    values, bases, exps = [], [], []
    power = primes.astype(np.int64)
    base = primes.astype(np.int64)
    k = 1
    while power.size:
        values.append(power)
        bases.append(base)
        exps.append(np.full(power.size, k, dtype=np.int16))
        keep = power <= limit // base
        power = power[keep] * base[keep]
        base = base[keep]
        k += 1
    values = np.concatenate(values)
    order = np.argsort(values, kind="stable")
    return ArithTable(
        limit=limit,
        spf=spf,
        mu=mu,
        pp_values=values[order],
        pp_base=np.concatenate(bases)[order],
        pp_exp=np.concatenate(exps)[order],
    )


# ---------------------------------------------------------------------------
# pointwise helpers that also work without a table


def factorize(n: int, table: ArithTable | None = None) -> list[tuple[int, int]]:
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    if table is not None and n <= table.limit:
        return table.factorize(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def mobius(n: int, table: ArithTable | None = None) -> int:
    if table is not None and n <= table.limit:
        return table.mobius(n)
    fac = factorize(n)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def von_mangoldt(n: int, table: ArithTable | None = None) -> float:
    if table is not None and n <= table.limit:
        return table.von_mangoldt(n)
    fac = factorize(n)
    return math.log(fac[0][0]) if len(fac) == 1 else 0.0


def chi(d: int, x: int, method: str = "int") -> int:
    """Divisibility indicator: 1 iff d divides x.

    ``method="int"`` is the authoritative integer test.  ``method="cos"``
    evaluates floor(cos^2(pi x / d)) in floating point, kept for diagnostics.
    """
    if d < 1 or x < 1:
        raise DomainError("chi needs d >= 1 and x >= 1")
    if method == "int":
        return int(x % d == 0)
    if method == "cos":
        return int(math.floor(math.cos(math.pi * x / d) ** 2))
    raise DomainError(f"unknown method {method!r}")


def chi_cos_array(d: np.ndarray, x: int) -> np.ndarray:
    """Vectorized floating indicator floor(cos^2(pi x / d))."""
    return np.floor(np.cos(np.pi * x / np.asarray(d, dtype=float)) ** 2).astype(np.int64)


def divisor_power_sum(x: int, r: int) -> int:
    """sigma_r(x) = sum over d of chi(d, x) * Gamma(1, -r log d), rounded per term."""
    if x < 1 or r < 0:
        raise DomainError("need x >= 1 and r >= 0")
    if r > 8:
        raise DomainError("r must be at most 8")
    if r and x ** r > _EXACT_INT_BOUND:
        raise CapacityError(f"{x}**{r} exceeds exact double range")
    d = np.arange(1, x + 1, dtype=np.int64)
    divs = d[x % d == 0]
    if divs.size < 64:
        vals = [round(upper_gamma(1, -r * math.log(int(k)))) for k in divs]
        return int(sum(vals))
    # same Gamma(1, -r log d) = exp(r log d), vectorized
    vals = np.rint(np.exp(r * np.log(divs.astype(float)))).astype(np.int64)
    return int(vals.sum())


def omega_exact(x: int, table: ArithTable | None = None) -> float:
    """Weighted count of prime-power divisors: sum over p**k | x of 1/k."""
    if x < 1:
        raise DomainError("x must be >= 1")
    terms = []
    for _, k in factorize(x, table):
        terms.extend(1.0 / j for j in range(1, k + 1))
    return math.fsum(terms)


def d_lambda_exact(x: int, table: ArithTable | None = None) -> float:
    """Sum of Lambda(n) over the divisors n of x (equals log x)."""
    if x < 1:
        raise DomainError("x must be >= 1")
    terms = []
    for p, k in factorize(x, table):
        terms.extend([math.log(p)] * k)
    return math.fsum(terms)


def lambda_from_moebius(x: int, table: ArithTable | None = None) -> float:
    """Lambda(x) rebuilt as -sum_{m <= x} chi(m, x) mu(m) log m."""
    if x < 2:
        raise DomainError("x must be >= 2")
    m = np.arange(1, x + 1, dtype=np.int64)
    divs = m[x % m == 0]
    if table is not None and x <= table.limit:
        mus = table.mu[divs].astype(float)
    else:
        mus = np.array([mobius(int(v)) for v in divs], dtype=float)
    return -math.fsum(mus * np.log(divs.astype(float)))


# ---------------------------------------------------------------------------
# summatory functions


def exact_sum(table: ArithTable, fn, x):
    """Exact summatory function ``fn`` at x (scalar or array), using floor(x).

    Jumps are left-closed: the value at an integer includes that integer.
    """
    fn = ExactFn(fn)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 2):
        raise DomainError("exact sums need x >= 2")
    if np.any(arr > table.limit):
        raise RangeError(f"x = {arr.max():g} exceeds table limit {table.limit}")
    n = np.floor(arr).astype(np.int64)

    if fn is ExactFn.omega:
        out = np.array([omega_exact(int(v), table) for v in np.ravel(n)]).reshape(n.shape)
    elif fn is ExactFn.d_Lambda:
        out = np.array([d_lambda_exact(int(v), table) for v in np.ravel(n)]).reshape(n.shape)
    elif fn is ExactFn.Ch:
        vals, cum = table._prefix_sums(ExactFn.psi)
        out = (cum[np.searchsorted(vals, n, side="right")].astype(float)
               - np.log(n.astype(float)))
    else:
        vals, cum = table._prefix_sums(fn)
        out = cum[np.searchsorted(vals, n, side="right")].astype(float)
    return float(out) if out.ndim == 0 else out
