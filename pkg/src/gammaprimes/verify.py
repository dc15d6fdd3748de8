"""Invariant suites behind ``gammaprimes verify``.

Each check returns a :class:`Check` row; a suite passes when every row does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import (ArithTable, build_table, d_lambda_exact, divisor_power_sum,
                         exact_sum, lambda_from_moebius)
from .explicit import explicit_eval, explicit_pi, frak_z, spec_for
from .gamma_series import SERIES, audit_series_vs_closed, poisson_mean_sum, series_limit
from .zeros import ZeroTable, bundled_zeros


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str


def _identities(table: ArithTable) -> list[Check]:
    rows = []
    worst = max(abs(poisson_mean_sum(c).value - c) for c in (-math.log(1e6), -1.0, 0.5, 5.0))
    rows.append(Check("identities", "sum_n P(n, c) = c", worst <= 1e-9, f"max err {worst:.2e}"))

    n_max = min(10_000, table.limit)
    worst = max(abs(d_lambda_exact(n, table) - math.log(n)) for n in range(2, n_max + 1))
    rows.append(Check("identities", "d_Lambda(x) = log x", worst <= 1e-9, f"max err {worst:.2e}"))

    worst = max(abs(lambda_from_moebius(n, table) - table.von_mangoldt(n))
                for n in range(2, 2001))
    rows.append(Check("identities", "Lambda from Moebius", worst <= 1e-9, f"max err {worst:.2e}"))

    bad = 0
    for x in range(1, 1001):
        divs = [d for d in range(1, x + 1) if x % d == 0]
        for r in (0, 1, 2):
            if divisor_power_sum(x, r) != sum(d**r for d in divs):
                bad += 1
    rows.append(Check("identities", "sigma_r brute force (x <= 1000)", bad == 0, f"{bad} mismatches"))

    worst = 0.0
    for x in (1e3, float(table.limit)):
        direct = exact_sum(table, "J", x)
        via_pi = math.fsum(exact_sum(table, "pi", x ** (1 / m)) / m
                           for m in range(1, int(math.log2(x)) + 1) if x ** (1 / m) >= 2)
        worst = max(worst, abs(direct - via_pi))
    rows.append(Check("identities", "J = sum pi(x^(1/m))/m", worst <= 1e-9, f"max err {worst:.2e}"))
    return rows


def _series() -> list[Check]:
    rows = []
    for fn in ("Np", "Ch", "H", "sigma"):
        worst = 0.0
        for x in (2.5, 10.0, 1e3, 1e6):
            v = SERIES[fn](x).value
            err = abs(v - series_limit(fn, x)) / max(1.0, abs(v))
            worst = max(worst, err)
        rows.append(Check("series", f"series_{fn} closed form", worst <= 1e-8, f"max err {worst:.2e}"))
    grid = [2.5, 10.0, 1e2, 1e3, 1e4]
    for fn, want in (("Np", True), ("Ch", True), ("J02", False)):
        rep = audit_series_vs_closed(fn, grid)
        rows.append(Check("series", f"audit {fn} offset constant = {want}", rep.constant == want,
                          f"offset {rep.offset:.6g}, spread {rep.spread:.2e}"))
    return rows


def _explicit(table: ArithTable, zeros: ZeroTable) -> list[Check]:
    rows = []
    grid = np.floor(np.linspace(10, 1000, 50)) + 0.5
    for name in ("psi", "J"):
        rms = []
        for z in (zeros.head(10), zeros):
            spec = spec_for(name, z)
            err = [explicit_eval(spec, x).value - exact_sum(table, name, x) for x in grid]
            rms.append(float(np.sqrt(np.mean(np.square(err)))))
        rows.append(Check("explicit", f"{name} RMS shrinks 10 -> {len(zeros)} zeros",
                          rms[1] < rms[0], f"{rms[0]:.4f} -> {rms[1]:.4f}"))
    hits = sum(round(explicit_pi(x, zeros, table)) == exact_sum(table, "pi", x) for x in grid)
    rows.append(Check("explicit", "explicit pi rounds to pi", hits >= 0.9 * len(grid),
                      f"{hits}/{len(grid)}"))
    if table.limit >= 10**6:
        a = frak_z(2.0, "dirichlet", table)
        b = frak_z(2.0, "product", table)
        rows.append(Check("explicit", "z(2) dirichlet = product", abs(a.value - b.value) <= 1e-8,
                          f"diff {abs(a.value - b.value):.1e}"))
    return rows


SUITES = ("identities", "series", "explicit", "all")


def run_suite(suite: str, table: ArithTable | None = None,
              zeros: ZeroTable | None = None) -> list[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if table is None:
        table = build_table(10**6)
    if zeros is None:
        zeros = bundled_zeros()
    rows = []
    if suite in ("identities", "all"):
        rows += _identities(table)
    if suite in ("series", "all"):
        rows += _series()
    if suite in ("explicit", "all"):
        rows += _explicit(table, zeros)
    return rows
