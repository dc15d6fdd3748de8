"""Command-line interface: ``gammaprimes <command> [options]``.

Commands
    exact      sieve values of an arithmetic function on a grid
    average    smooth (average) approximation on a grid
    explicit   explicit-formula approximation with zeta zeros
    compare    exact vs average vs explicit, with error columns
    plotdata   exact, average and explicit columns only
    verify     run invariant suites; exit 1 on any failure

Exit codes: 0 ok, 1 verify failure, 2 domain/range error, 3 capacity error,
4 zeros needed but unavailable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .arithmetic import MAX_LIMIT, ExactFn, build_table, exact_sum
from .errors import CapacityError, DomainError, GammaPrimesError, PreconditionError, RangeError
from .explicit import (estimate_H, estimate_sigma_p, explicit_eval, explicit_pi, explicit_theta,
                       spec_for)
from .gamma_series import SeriesControl, series_Ch, series_Np
from .moebius import avg_Hp, avg_pi1, avg_sigma_p, avg_theta
from .specfun import EULER_GAMMA, ei_real
from .verify import SUITES, run_suite
from .zeros import bundled_zeros, load_zeros

DEFAULT_SIEVE_LIMIT = 10**7
DEFAULT_NUM_ZEROS = 100

EXIT_VERIFY = 1
EXIT_DOMAIN = 2
EXIT_CAPACITY = 3
EXIT_NO_ZEROS = 4

COMPARE_COLUMNS = ["x", "exact", "average", "explicit",
                   "abs_err_avg", "abs_err_exp", "rel_err_avg", "rel_err_exp"]
PLOT_COLUMNS = ["x", "exact", "average", "explicit"]

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "metadata", "columns", "rows"],
    "properties": {
        "command": {"type": "string"},
        "metadata": {
            "type": "object",
            "required": ["fn", "num_zeros", "series_tol", "sieve_limit", "timestamp"],
            "properties": {
                "fn": {"type": "string"},
                "num_zeros": {"type": "integer", "minimum": 0},
                "series_tol": {"type": "number"},
                "sieve_limit": {"type": "integer"},
                "timestamp": {"type": ["string", "null"]},
            },
        },
        "columns": {"type": "array", "items": {"type": "string"}},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"x": {"type": "number"}},
                "required": ["x"],
                "additionalProperties": {"type": ["number", "null"]},
            },
        },
    },
}


class NoZerosError(GammaPrimesError):
    pass


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    points: int
    geometric: bool = False
    offset: float = 0.5

    def __post_init__(self):
        if not 2 < self.x_min < self.x_max:
            raise DomainError(f"grid needs 2 < from < to, got [{self.x_min}, {self.x_max}]")
        if self.points < 2:
            raise DomainError("grid needs at least 2 points")

    def values(self) -> np.ndarray:
        if self.geometric:
            xs = np.geomspace(self.x_min, self.x_max, self.points)
        else:
            xs = np.linspace(self.x_min, self.x_max, self.points)
        # keep integer points off the jumps
        return np.where(xs == np.floor(xs), xs + self.offset, xs)


# ---------------------------------------------------------------------------
# per-function evaluators


def average_value(fn: ExactFn, x: float, table, ctl: SeriesControl) -> float:
    L = math.log(x)
    if fn is ExactFn.pi:
        return avg_pi1(x, table)
    if fn is ExactFn.J:
        return series_Np(x, ctl).value + math.log(L) + EULER_GAMMA
    if fn is ExactFn.psi:
        return x
    if fn is ExactFn.theta:
        return avg_theta(x, table)
    if fn is ExactFn.Ch:
        return series_Ch(x, ctl).value + 1.0
    if fn is ExactFn.K:
        return ei_real(2 * L)
    if fn is ExactFn.epsilon:
        return 0.5 * x * x
    if fn is ExactFn.sigma_p:
        return avg_sigma_p(x, table)
    if fn is ExactFn.H_p:
        return avg_Hp(x, table)
    if fn is ExactFn.omega:
        return math.log(L)
    if fn is ExactFn.d_Lambda:
        return L
    return x * (L - 1.0)  # LambdaLogSum


_HIERARCHY_NAME = {ExactFn.J: "J", ExactFn.psi: "psi", ExactFn.K: "K",
                   ExactFn.epsilon: "epsilon", ExactFn.LambdaLogSum: "J02"}
NO_EXPLICIT = {ExactFn.omega, ExactFn.d_Lambda}


def explicit_value(fn: ExactFn, x: float, zeros, table) -> float:
    if fn in _HIERARCHY_NAME:
        return explicit_eval(spec_for(_HIERARCHY_NAME[fn], zeros), x).value
    if fn is ExactFn.pi:
        return explicit_pi(x, zeros, table)
    if fn is ExactFn.theta:
        return explicit_theta(x, zeros, table)
    if fn is ExactFn.Ch:
        return explicit_eval(spec_for("psi", zeros), x).value - math.log(math.floor(x))
    if fn is ExactFn.sigma_p:
        return estimate_sigma_p(x, zeros, table)
    if fn is ExactFn.H_p:
        return estimate_H(x, zeros, table)
    raise DomainError(f"{fn.value} has no explicit formula")


# ---------------------------------------------------------------------------
# configuration


def _sieve_limit(args) -> int:
    if args.sieve_limit is not None:
        return int(args.sieve_limit)
    env = os.environ.get("PGL_SIEVE_LIMIT")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise DomainError(f"PGL_SIEVE_LIMIT is not a number: {env!r}") from None
    return DEFAULT_SIEVE_LIMIT


def _zeros(args):
    if args.num_zeros <= 0:
        raise NoZerosError("--num-zeros must be positive for explicit formulas")
    path = args.zeros_file or os.environ.get("PGL_ZEROS_FILE")
    if path:
        if not Path(path).is_file():
            raise NoZerosError(f"zeros file not found: {path}")
        return load_zeros(path, args.num_zeros)
    return bundled_zeros().head(args.num_zeros)


def _table_for(xs, limit):
    if limit > MAX_LIMIT or limit < 2:
        raise CapacityError(f"sieve limit {limit} outside [2, {MAX_LIMIT}]")
    top = int(math.floor(float(np.max(xs))))
    if top > limit:
        raise RangeError(f"x = {float(np.max(xs)):g} exceeds sieve limit {limit}")
    return build_table(max(top + 1, 2))


# ---------------------------------------------------------------------------
# output


def _fmt(v):
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return ""
    return repr(float(v))


def _render(columns, rows, fmt, command, meta) -> str:
    if fmt == "json":
        clean = [{c: (None if r[c] is None or not math.isfinite(r[c]) else float(r[c]))
                  for c in columns} for r in rows]
        doc = {"command": command, "metadata": meta, "columns": columns, "rows": clean}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


# ---------------------------------------------------------------------------
# commands


def _rows(args, want_exact, want_avg, want_exp):
    fn = ExactFn(args.fn)
    grid = Grid(args.x_from, args.x_to, args.points, args.geometric, args.offset)
    xs = grid.values()
    limit = _sieve_limit(args)
    table = _table_for(xs, limit) if (want_exact or want_avg or want_exp) else None
    zeros = None
    if want_exp and fn not in NO_EXPLICIT:
        zeros = _zeros(args)
    ctl = SeriesControl(abs_tol=args.series_tol)
    rows = []
    for x in xs:
        x = float(x)
        row = {"x": x}
        if want_exact:
            row["exact"] = exact_sum(table, fn, x)
        if want_avg:
            row["average"] = average_value(fn, x, table, ctl)
        if want_exp:
            row["explicit"] = None if zeros is None else explicit_value(fn, x, zeros, table)
        rows.append(row)
    meta = {
        "fn": fn.value,
        "num_zeros": 0 if zeros is None else len(zeros),
        "series_tol": args.series_tol,
        "sieve_limit": limit,
        "timestamp": datetime.now(timezone.utc).isoformat() if args.timestamp else None,
    }
    return rows, meta


def _single(args, key):
    flags = {"exact": (True, False, False), "average": (False, True, False),
             "explicit": (False, False, True)}[key]
    if key == "explicit" and ExactFn(args.fn) in NO_EXPLICIT:
        raise DomainError(f"{args.fn} has no explicit formula")
    rows, meta = _rows(args, *flags)
    out = [{"x": r["x"], "value": r[key]} for r in rows]
    _emit(_render(["x", "value"], out, args.format, key, meta), args.out)
    return 0


def _errors(rows):
    for r in rows:
        e = r["exact"]
        for src, a, rel in (("average", "abs_err_avg", "rel_err_avg"),
                            ("explicit", "abs_err_exp", "rel_err_exp")):
            v = r[src]
            if v is None:
                r[a] = r[rel] = None
            else:
                r[a] = v - e
                r[rel] = (v - e) / e if e != 0 else None


def _summary(fn, rows):
    parts = [f"fn={fn}", f"points={len(rows)}"]
    for label, key in (("avg", "abs_err_avg"), ("exp", "abs_err_exp")):
        vals = np.array([r[key] for r in rows if r[key] is not None], dtype=float)
        if vals.size:
            parts.append(f"max_abs_{label}={np.max(np.abs(vals)):.6g}")
            parts.append(f"rms_{label}={np.sqrt(np.mean(vals**2)):.6g}")
    return " ".join(parts)


def cmd_compare(args):
    rows, meta = _rows(args, True, True, True)
    _errors(rows)
    _emit(_render(COMPARE_COLUMNS, rows, args.format, "compare", meta), args.out)
    print(_summary(args.fn, rows), file=sys.stderr)
    return 0


def cmd_plotdata(args):
    rows, meta = _rows(args, True, True, True)
    _emit(_render(PLOT_COLUMNS, rows, args.format, "plotdata", meta), args.out)
    return 0


def cmd_verify(args):
    zeros = None
    if args.zeros_file or os.environ.get("PGL_ZEROS_FILE"):
        zeros = _zeros(args)
    rows = run_suite(args.suite, zeros=zeros)
    width = max(len(r.name) for r in rows)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.suite:<10}  {r.name:<{width}}  {r.detail}"
             for r in rows]
    failed = sum(not r.passed for r in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sieve-limit", type=lambda s: int(float(s)), default=None,
                        help=f"sieve bound (default {DEFAULT_SIEVE_LIMIT:.0e}, env PGL_SIEVE_LIMIT)")
    common.add_argument("--zeros-file", default=None,
                        help="zeta zero ordinates, one per line (env PGL_ZEROS_FILE)")
    common.add_argument("--num-zeros", type=int, default=DEFAULT_NUM_ZEROS,
                        help="number of zeros to use (default %(default)s, bundled)")
    common.add_argument("--out", default=None, help="write to PATH instead of stdout")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--fn", required=True, choices=[f.value for f in ExactFn])
    grid.add_argument("--from", dest="x_from", type=float, required=True)
    grid.add_argument("--to", dest="x_to", type=float, required=True)
    grid.add_argument("--points", type=int, default=50)
    grid.add_argument("--geometric", action="store_true", help="log-spaced grid")
    grid.add_argument("--offset", type=float, default=0.5,
                      help="added to integer grid points (default %(default)s)")
    grid.add_argument("--series-tol", type=_positive_float, default=1e-12)
    grid.add_argument("--format", choices=("csv", "json"), default="csv")
    grid.add_argument("--timestamp", action="store_true",
                      help="record wall-clock time in JSON metadata (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="gammaprimes", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("exact", "average", "explicit", "compare", "plotdata"):
        sub.add_parser(name, parents=[common, grid])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--suite", choices=SUITES, default="all")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "exact": lambda a: _single(a, "exact"),
        "average": lambda a: _single(a, "average"),
        "explicit": lambda a: _single(a, "explicit"),
        "compare": cmd_compare,
        "plotdata": cmd_plotdata,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except NoZerosError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ZEROS
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ZEROS
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (GammaPrimesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
