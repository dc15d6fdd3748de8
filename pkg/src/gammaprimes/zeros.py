"""Tables of nontrivial zeta-zero ordinates.

Only positive ordinates gamma are stored; every zero is taken to be
rho = 1/2 + i gamma (critical line), and consumers pair rho with its
conjugate through 2 Re(...).

File format: UTF-8 text, one decimal ordinate per line, ascending.  Blank
lines and lines starting with '#' are skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import EmptyTableError, ZeroFileFormatError

FIRST_ORDINATE = 14.134725
_FIRST_TOL = 1e-4


@dataclass(frozen=True, eq=False)
class ZeroTable:
    ordinates: np.ndarray
    source: str = ""

    def __post_init__(self):
        ords = np.asarray(self.ordinates, dtype=float)
        ords.setflags(write=False)
        object.__setattr__(self, "ordinates", ords)

    def __len__(self):
        return int(self.ordinates.size)

    def rho(self) -> np.ndarray:
        """Zeros 1/2 + i gamma as a complex array."""
        return 0.5 + 1j * self.ordinates

    def head(self, count: int) -> "ZeroTable":
        count = min(count, len(self))
        if count <= 0:
            raise EmptyTableError("zero table would be empty")
        return ZeroTable(self.ordinates[:count], f"{self.source}[:{count}]")

    def count_below(self, t: float) -> int:
        return int(np.searchsorted(self.ordinates, t, side="right"))


def _parse(lines, max_count, source):
    values = []
    prev = None
    for lineno, raw in enumerate(lines, start=1):
        if len(values) >= max_count:
            break
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            value = float(line)
        except ValueError:
            raise ZeroFileFormatError(f"not a number: {line!r}", lineno) from None
        if not math.isfinite(value) or value <= 0:
            raise ZeroFileFormatError(f"ordinate must be positive, got {line}", lineno)
        if prev is not None and value <= prev:
            raise ZeroFileFormatError(f"ordinates not ascending ({value} after {prev})", lineno)
        if value <= 14.0:
            raise ZeroFileFormatError(f"ordinate {value} below the first zeta zero", lineno)
        values.append(value)
        prev = value
    if not values:
        raise EmptyTableError(f"no ordinates read from {source}")
    if abs(values[0] - FIRST_ORDINATE) > _FIRST_TOL:
        raise ZeroFileFormatError(
            f"first ordinate {values[0]} is not the first zeta zero {FIRST_ORDINATE}")
    return ZeroTable(np.array(values), source)


def load_zeros(path, max_count: int = 10**9) -> ZeroTable:
    """Read at most ``max_count`` ordinates from ``path`` and validate them."""
    if max_count <= 0:
        raise EmptyTableError("max_count must be positive")
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return _parse(fh, max_count, str(path))


def parse_zeros(text: str, max_count: int = 10**9, source: str = "<string>") -> ZeroTable:
    if max_count <= 0:
        raise EmptyTableError("max_count must be positive")
    return _parse(text.splitlines(), max_count, source)


def dump_zeros(table: ZeroTable, path) -> None:
    """Write ``table`` in the zeros file format; floats round-trip exactly."""
    lines = [f"# {table.source}\n"] if table.source else []
    lines += [repr(float(v)) + "\n" for v in table.ordinates]
    Path(path).write_text("".join(lines), encoding="utf-8")


_BUNDLED = None


def bundled_zeros() -> ZeroTable:
    """First 100 ordinates shipped with the package (15 significant digits)."""
    global _BUNDLED
    if _BUNDLED is None:
        text = resources.files("gammaprimes").joinpath("data/zeros100.txt").read_text("utf-8")
        _BUNDLED = parse_zeros(text, source="bundled:zeros100")
    return _BUNDLED
