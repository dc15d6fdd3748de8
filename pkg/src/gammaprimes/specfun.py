"""Special functions: integer-order incomplete gamma, exponential integrals, constants.

Everything here works in IEEE double precision.  Ei is evaluated on the
principal branch of the logarithm, so for Im z > 0 the value equals
li(x**rho) in the sense ``Ei(rho * log x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyLossError, BranchError, DomainError, PoleError

EULER_GAMMA = 0.5772156649015329
STIELTJES_GAMMA1 = -0.0728158454836767
GLAISHER_LOG = 0.2487544770337843  # ln A, Glaisher-Kinkelin

GAMMA_ARG_LIMIT = 50.0

# Ei dispatch.  Past ASYMPTOTIC_RADIUS the optimally truncated asymptotic
# series is below 1e-13 relative.  Inside it, the Taylor series loses about
# exp(|z| - Re z) in relative accuracy, so it is only used while that slack
# stays small; elsewhere the E1 continued fraction takes over.
ASYMPTOTIC_RADIUS = 35.0
ASYMPTOTIC_MAX_TERMS = 30
SERIES_SLACK = 6.0
REAL_SERIES_LIMIT = 40.0
_CF_MAX_ITER = 5000
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    stieltjes_gamma1: float
    glaisher_log: float
    C: float
    D: float


def _d_full() -> float:
    lp2 = math.log(math.pi) + math.log(2.0)
    l2p = math.log(2.0 * math.pi)
    return (math.pi**2 / 12 + lp2**2 - l2p**2
            - EULER_GAMMA**2 - 2.0 * STIELTJES_GAMMA1)


def _d_reduced() -> float:
    return math.pi**2 / 12 - EULER_GAMMA**2 - 2.0 * STIELTJES_GAMMA1


_CONSTANTS = Constants(
    euler_gamma=EULER_GAMMA,
    stieltjes_gamma1=STIELTJES_GAMMA1,
    glaisher_log=GLAISHER_LOG,
    C=12.0 * GLAISHER_LOG - 1.0,
    D=_d_full(),
)


def constants() -> Constants:
    """Return the constant set used by the explicit formulas.

    ``C = 12 ln A - 1`` enters the K and epsilon formulas, ``D`` the
    second-derivative member of the hierarchy.
    """
    return _CONSTANTS


# ---------------------------------------------------------------------------
# incomplete gamma, integer order


def reg_lower_gamma_int(n: int, z: float) -> float:
    """Regularized lower incomplete gamma P(n, z) for integer n >= 1 and real z.

    For integer order the function is entire in z, so negative arguments are
    fine.  Uses ``1 - e^{-z} sum_{k<n} z^k/k!`` while n <= |z| and the tail
    ``e^{-z} sum_{k>=n} z^k/k!`` once n > |z|, where the head form would
    cancel.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"order must be a positive integer, got {n!r}")
    n = int(n)
    z = float(z)
    if not math.isfinite(z):
        raise DomainError("argument must be finite")
    if abs(z) > GAMMA_ARG_LIMIT:
        raise AccuracyLossError(
            f"|z| = {abs(z):g} exceeds the double-precision envelope {GAMMA_ARG_LIMIT:g}")
    if z == 0.0:
        return 0.0

    if n <= abs(z):
        terms = []
        t = 1.0
        for k in range(n):
            terms.append(t)
            t *= z / (k + 1)
        return 1.0 - math.exp(-z) * math.fsum(terms)

    t = 1.0
    for k in range(1, n + 1):
        t *= z / k
    terms = [t]
    k = n
    while True:
        k += 1
        t *= z / k
        terms.append(t)
        if abs(t) <= 1e-18 * abs(terms[0]):
            break
    return math.exp(-z) * math.fsum(terms)


def upper_gamma(a: int, z):
    """Upper incomplete gamma at order 0 or 1.

    Gamma(1, z) = e^{-z}.  Gamma(0, z) = E1(z); on the negative real axis the
    real principal value -Ei(-z) is returned (the -i*pi branch term of E1 is
    dropped, matching how li enters the counting formulas).
    """
    if a == 1:
        if isinstance(z, complex) or np.iscomplexobj(z):
            return np.exp(-np.asarray(z, dtype=complex))[()]
        return math.exp(-z)
    if a != 0:
        raise DomainError(f"only orders 0 and 1 are supported, got {a!r}")
    if z == 0:
        raise PoleError("Gamma(0, z) has a pole at z = 0")
    zc = complex(z)
    if zc.imag == 0.0:
        return -ei_real(-zc.real)
    return complex(-ei_complex(-zc) - 1j * math.pi * math.copysign(1.0, zc.imag))


# ---------------------------------------------------------------------------
# exponential integral, real argument


def _e1_cf_real(u: float) -> float:
    # modified Lentz on the even contraction of the E1 continued fraction
    tiny = 1e-300
    b = u + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _CF_MAX_ITER):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(-u)
    raise AccuracyLossError("E1 continued fraction did not converge", estimate=h * math.exp(-u))


def ei_real(y: float) -> float:
    """Exponential integral Ei(y) for real y != 0.

    Positive y: power series up to 40, asymptotic expansion beyond.
    Negative y: -E1(-y) with the series for |y| <= 1 and the continued
    fraction otherwise, which avoids the alternating-series cancellation.
    """
    y = float(y)
    if y == 0.0:
        raise PoleError("Ei has a logarithmic pole at 0")
    if not math.isfinite(y):
        raise DomainError("argument must be finite")
    if y < 0.0:
        u = -y
        if u <= 1.0:
            terms = []
            t = 1.0
            k = 0
            while True:
                k += 1
                t *= -u / k
                terms.append(t / k)
                if abs(t) < 1e-18:
                    break
            return EULER_GAMMA + math.log(u) + math.fsum(terms)
        return -_e1_cf_real(u)
    if y <= REAL_SERIES_LIMIT:
        terms = [EULER_GAMMA, math.log(y)]
        t = 1.0
        k = 0
        running = 0.0
        while True:
            k += 1
            t *= y / k
            terms.append(t / k)
            running += t / k
            if k > y and t / k < 1e-18 * max(1.0, running):
                break
        return math.fsum(terms)
    if y > 700.0:
        raise AccuracyLossError(f"Ei({y:g}) overflows double precision")
    terms = []
    t = 1.0
    for k in range(int(y) + 1):
        terms.append(t)
        nxt = t * (k + 1) / y
        if nxt < _EPS * 1e-2 or nxt > t:
            break
        t = nxt
    return math.exp(y) / y * math.fsum(terms)


# ---------------------------------------------------------------------------
# exponential integral, complex argument


def _ei_series(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    total = np.zeros_like(z)
    t = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    last = np.zeros(z.shape)
    k = 0
    while active.any() and k < 400:
        k += 1
        t = t * z / k
        term = t / k
        total = total + np.where(active, term, 0)
        mag = np.abs(term)
        last = np.where(active, mag, last)
        active &= ~((mag <= _EPS * 1e-2 * np.abs(total)) & (k > np.abs(z)))
    value = EULER_GAMMA + np.log(z) + total
    # rounding from the largest term dominates the bound
    bound = _EPS * np.exp(np.abs(z)) + last
    return value, bound


def _e1_cf(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    tiny = 1e-300
    b = w + 1.0
    c = np.full_like(w, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    done = np.zeros(w.shape, dtype=bool)
    err = np.full(w.shape, np.inf)
    for i in range(1, _CF_MAX_ITER):
        an = -float(i * i)
        b = b + 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h = np.where(done, h, h * delta)
        step = np.abs(delta - 1.0)
        err = np.where(done, err, step)
        done |= step < 4 * _EPS
        if done.all():
            break
    value = h * np.exp(-w)
    if not done.all():
        raise AccuracyLossError(
            "E1 continued fraction did not converge",
            estimate=value, bound=np.abs(value) * err)
    return value, np.abs(value) * 8 * _EPS


def _ei_asymptotic(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    kmax = np.minimum(np.floor(np.abs(z)).astype(int), ASYMPTOTIC_MAX_TERMS)
    total = np.zeros_like(z)
    t = np.ones_like(z)
    last = np.zeros(z.shape)
    for k in range(ASYMPTOTIC_MAX_TERMS):
        use = k < kmax
        total = total + np.where(use, t, 0)
        t = t * (k + 1) / z
        last = np.where(use, np.abs(t), last)
    prefactor = np.exp(z) / z
    value = prefactor * total + 1j * math.pi * np.sign(z.imag)
    return value, np.abs(prefactor) * last


def ei_complex_bounded(z):
    """Ei(z) together with an estimate of its absolute error.

    Accepts a scalar or an array; see :func:`ei_complex` for conventions.
    """
    arr = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(arr).ravel()
    if not np.all(np.isfinite(flat)):
        raise DomainError("argument must be finite")
    on_cut = (flat.imag == 0.0) & (flat.real <= 0.0)
    if on_cut.any():
        raise BranchError(f"Ei is not defined on the cut (-inf, 0]: {flat[on_cut][0]}")
    if np.any(flat.real > 700.0):
        raise AccuracyLossError("Re z > 700 overflows double precision")

    value = np.empty_like(flat)
    bound = np.empty(flat.shape)
    radius = np.abs(flat)
    real_pos = flat.imag == 0.0
    asym = ~real_pos & (radius > ASYMPTOTIC_RADIUS)
    series = ~real_pos & ~asym & (radius - flat.real <= SERIES_SLACK)
    cf = ~(real_pos | asym | series)

    if real_pos.any():
        vals = np.array([ei_real(v) for v in flat.real[real_pos]])
        value[real_pos] = vals
        bound[real_pos] = np.abs(vals) * 1e-15
    if series.any():
        value[series], bound[series] = _ei_series(flat[series])
    if asym.any():
        value[asym], bound[asym] = _ei_asymptotic(flat[asym])
    if cf.any():
        zc = flat[cf]
        e1, b = _e1_cf(-zc)
        value[cf] = -e1 + 1j * math.pi * np.sign(zc.imag)
        bound[cf] = b

    if arr.ndim == 0:
        return complex(value[0]), float(bound[0])
    return value.reshape(arr.shape), bound.reshape(arr.shape)


def ei_complex(z):
    """Exponential integral Ei(z) on the principal branch.

    ``Ei(z) = gamma + Log z + sum z^k/(k k!)``, continued off the real axis;
    with Im z > 0 this is li(x**rho) for z = rho log x.  Scalars give a
    complex, arrays an array of the same shape.
    """
    return ei_complex_bounded(z)[0]


def ei_small_array(u: np.ndarray) -> np.ndarray:
    """Vectorized Ei(u) for 0 < u <= 1 by the power series."""
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0) or np.any(u > 1):
        raise DomainError("ei_small_array needs 0 < u <= 1")
    total = np.zeros_like(u)
    t = np.ones_like(u)
    for k in range(1, 30):
        t = t * u / k
        total += t / k
    return EULER_GAMMA + np.log(u) + total
