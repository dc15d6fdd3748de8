"""Average counting functions as series of P(n, -log x), plus their closed forms.

With c = -log x every series here is an alternating-looking sum of very large
terms (P(n, c) reaches ~1e10 at x = 1e6) that cancels down to a value of
order x; terms are accumulated with ``math.fsum`` and the relative accuracy
of the result is roughly 1e-13.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field

from .errors import DomainError
from .specfun import EULER_GAMMA, ei_real, reg_lower_gamma_int


@dataclass(frozen=True)
class SeriesControl:
    max_terms: int = 200
    abs_tol: float = 1e-12

    def __post_init__(self):
        if self.max_terms < 10:
            raise DomainError("max_terms must be >= 10")
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")


@dataclass(frozen=True)
class EvalResult:
    """A value with diagnostics: terms summed, tail bound, zeros used."""

    value: float
    terms_used: int = 0
    trunc_bound: float = 0.0
    zeros_used: int = 0
    converged: bool = True
    details: dict = field(default_factory=dict, compare=False, repr=False)

    def __float__(self):
        return float(self.value)


DEFAULT_CONTROL = SeriesControl()


def _gamma_series(x, ctl, coeff, shift):
    """Sum coeff(n) * P(n + shift, -log x) for n = 1, 2, ..."""
    if not x > 1:
        raise DomainError(f"series need x > 1, got {x}")
    ctl = ctl or DEFAULT_CONTROL
    c = -math.log(x)
    terms = []
    converged = False
    n = 0
    while n < ctl.max_terms:
        n += 1
        term = coeff(n) * reg_lower_gamma_int(n + shift, c)
        terms.append(term)
        # terms only start to shrink once the order passes |c|
        if n + shift > abs(c) and abs(term) < ctl.abs_tol:
            converged = True
            break
    order = n + shift + 1
    nxt = abs(coeff(n + 1) * reg_lower_gamma_int(order, c))
    ratio = min(abs(c) / (order + 1), 0.99)
    return EvalResult(
        value=math.fsum(terms),
        terms_used=n,
        trunc_bound=nxt / (1.0 - ratio),
        converged=converged,
    )


def series_Np(x: float, ctl: SeriesControl | None = None) -> EvalResult:
    """-sum P(n, -log x)/n, equal to Ei(log x) - log log x - gamma."""
    return _gamma_series(x, ctl, lambda n: -1.0 / n, 0)


def series_sigma(x: float, ctl: SeriesControl | None = None) -> EvalResult:
    """sum (-1)^n P(n, -log x)/n, equal to Ei(2 log x) - Ei(log x) - log 2."""
    return _gamma_series(x, ctl, lambda n: (-1.0) ** n / n, 0)


def series_Ch(x: float, ctl: SeriesControl | None = None) -> EvalResult:
    """sum P(n+1, -log x), equal to x - log x - 1."""
    return _gamma_series(x, ctl, lambda n: 1.0, 1)


def series_H(x: float, ctl: SeriesControl | None = None) -> EvalResult:
    """sum (-1)^(n+1) P(n+1, -log x), equal to x^2/2 - x + 1/2."""
    return _gamma_series(x, ctl, lambda n: (-1.0) ** (n + 1), 1)


def series_J02(x: float, ctl: SeriesControl | None = None) -> EvalResult:
    """-sum P(n+2, -log x), equal to x log x - 2x + log x + 2."""
    return _gamma_series(x, ctl, lambda n: -1.0, 2)


SERIES = {
    "Np": series_Np,
    "sigma": series_sigma,
    "Ch": series_Ch,
    "H": series_H,
    "J02": series_J02,
}


def _closed_J(x):
    return ei_real(math.log(x))


CLOSED_FORMS = {
    "J": _closed_J,
    "Np": lambda x: ei_real(math.log(x)) - math.log(math.log(x)),
    "omega": lambda x: math.log(math.log(x)),
    "psi": lambda x: float(x),
    "d_Lambda": lambda x: math.log(x),
    "Ch": lambda x: x - math.log(x),
    "J02": lambda x: x * (math.log(x) - 1.0),
}


def closed_average(fn: str, x: float) -> float:
    """Closed-form average for ``fn`` as stated (J02 and Ch are not the series limits).

    Identifiers: J, Np, omega, psi, d_Lambda, Ch, J02.
    """
    if fn not in CLOSED_FORMS:
        raise DomainError(f"no closed form for {fn!r}; known: {sorted(CLOSED_FORMS)}")
    if not x > 1:
        raise DomainError(f"closed forms need x > 1, got {x}")
    return CLOSED_FORMS[fn](x)


# closed forms the series actually sum to (used as oracles and by the audit)
def series_limit(fn: str, x: float) -> float:
    y = math.log(x)
    if fn == "Np":
        return ei_real(y) - math.log(y) - EULER_GAMMA
    if fn == "sigma":
        return ei_real(2 * y) - ei_real(y) - math.log(2.0)
    if fn == "Ch":
        return x - y - 1.0
    if fn == "H":
        return x * x / 2 - x + 0.5
    if fn == "J02":
        return x * y - 2 * x + y + 2
    raise DomainError(f"unknown series {fn!r}")


@dataclass
class AuditRow:
    x: float
    series: float
    closed: float
    difference: float


@dataclass
class AuditReport:
    fn: str
    rows: list
    spread: float
    constant: bool
    tolerance: float

    @property
    def offset(self) -> float:
        return self.rows[0].difference if self.rows else math.nan


# an offset counts as constant when its spread is below this, scaled by
# max(1, |series value|) since the series carry ~1e-13 relative rounding
AUDIT_TOL = 1e-8


def audit_series_vs_closed(fn: str, grid, ctl: SeriesControl | None = None) -> AuditReport:
    """Series value minus the closed-form average over ``grid``.

    For Np and Ch the difference is a constant (-gamma and -1); for J02 it
    is -x + log x + 2 and ``constant`` comes out False.
    """
    if fn not in ("Np", "Ch", "J02"):
        raise DomainError(f"audit covers Np, Ch and J02, not {fn!r}")
    grid = list(grid)
    if not grid:
        raise DomainError("grid is empty")
    rows = []
    scale = 1.0
    for x in grid:
        s = SERIES[fn](x, ctl).value
        c = closed_average(fn, x)
        rows.append(AuditRow(x, s, c, s - c))
        scale = max(scale, abs(s))
    diffs = [r.difference for r in rows]
    spread = max(diffs) - min(diffs)
    return AuditReport(fn, rows, spread, spread <= AUDIT_TOL * scale, AUDIT_TOL)



def _p_decimal(n, z):
    # P(n, z) = e^{-z} sum_{k>=n} z^k/k!, in the active decimal context
    eps = decimal.Decimal(10) ** -decimal.getcontext().prec
    t = z**n / math.factorial(n)
    acc = t
    k = n
    while True:
        k += 1
        t = t * z / k
        acc += t
        if k > abs(z) and abs(t) < eps:
            return (-z).exp() * acc


def poisson_mean_sum(c: float, max_terms: int = 200, tol: float = 1e-17) -> EvalResult:
    """sum_{n>=1} P(n, c), which equals c (the Poisson mean, for any real c).

    For c < 0 the terms reach e^{|c|} |c|^n / n! and cancel to a value of
    order |c|, so they are formed and summed in ``decimal`` arithmetic with
    enough digits to absorb that cancellation before rounding.  Terms stop
    once n > |c| and |P(n, c)| < tol, or at ``max_terms``.
    """
    z = decimal.Decimal(float(c))
    last = 0.0
    converged = False
    n = 0
    with decimal.localcontext() as ctx:
        ctx.prec = 30 + math.ceil(2 * abs(c) / math.log(10))
        acc = decimal.Decimal(0)
        while n < max_terms:
            n += 1
            t = _p_decimal(n, z) if z else decimal.Decimal(0)
            acc += t
            last = abs(float(t))
            if n > abs(c) and last < tol:
                converged = True
                break
        value = float(acc)
    return EvalResult(value=value, terms_used=n, trunc_bound=last, converged=converged)
