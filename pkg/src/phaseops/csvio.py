"""CSV readers and writers shared by the command line and the demos.

Matrices are dumped as ``row,col,re,im`` in row-major order with ``%.17g`` so
they round-trip exactly. Data curves use ``%.12e`` and carry ``#`` comment
lines describing where they came from.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .errors import InvalidState

__all__ = [
    "format_matrix",
    "read_matrix",
    "format_table",
    "format_coefficients",
    "format_distribution",
    "format_report",
]


def _g17(value: float) -> str:
    return "%.17g" % value


def _e12(value: float) -> str:
    return "%.12e" % value


def format_matrix(entries) -> str:
    entries = np.asarray(entries, dtype=complex)
    lines = ["row,col,re,im"]
    for (i, j), z in np.ndenumerate(entries):
        # + 0.0 folds negative zero so output does not depend on operation order
        lines.append(f"{i},{j},{_g17(z.real + 0.0)},{_g17(z.imag + 0.0)}")
    return "\n".join(lines) + "\n"


def read_matrix(path: str | Path) -> np.ndarray:
    """Read a ``row,col,re,im`` CSV into a dense complex matrix; missing entries are 0."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidState(f"cannot read {path}: {exc.strerror}") from None
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if not rows or [c.strip() for c in rows[0]] != ["row", "col", "re", "im"]:
        raise InvalidState(f"{path}: expected header row,col,re,im")
    try:
        data = [(int(r[0]), int(r[1]), float(r[2]), float(r[3])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise InvalidState(f"{path}: malformed matrix entry ({exc})") from None
    if not data:
        raise InvalidState(f"{path}: no matrix entries")
    size = 1 + max(max(i, j) for i, j, _, _ in data)
    if min(min(i, j) for i, j, _, _ in data) < 0:
        raise InvalidState(f"{path}: negative index")
    out = np.zeros((size, size), dtype=complex)
    for i, j, re, im in data:
        out[i, j] = complex(re, im)
    return out


def _comments(meta: dict) -> list[str]:
    return [f"# {key}: {'' if value is None else value}" for key, value in meta.items()]


def format_table(columns: dict[str, np.ndarray], meta: dict | None = None, index: str | None = None) -> str:
    """Generic numeric table; an ``index`` column is written as integers."""
    lines = _comments(meta or {})
    names = list(columns)
    lines.append(",".join(names))
    arrays = [np.asarray(columns[name]) for name in names]
    for k in range(len(arrays[0])):
        cells = []
        for name, arr in zip(names, arrays):
            cells.append(str(int(arr[k])) if name == index else _e12(float(arr[k]) + 0.0))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def format_coefficients(table, n_max: int) -> str:
    n = np.arange(n_max + 1)
    return format_table({"n": n, "f": table.f[: n_max + 1], "g": table.g[: n_max + 1],
                         "d": table.d[: n_max + 1]}, index="n")


def format_distribution(grid, classical: np.ndarray | None = None) -> str:
    columns = {"x": grid.points, "density": grid.density}
    if classical is not None:
        columns["classical"] = classical
    return format_table(columns, grid.meta)


def format_report(report) -> str:
    values = report.as_dict()
    return ",".join(values) + "\n" + ",".join(_e12(v + 0.0) for v in values.values()) + "\n"
