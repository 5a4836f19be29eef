"""CSV panel serialization.

Returns and factor files are time-major: one header row, then T data
rows; returns columns are securities, factor columns are factors.
Numbers are written with 17 significant digits so a write/read round
trip reproduces every float bit-exactly.
"""

import csv
import os

import numpy as np

from .errors import ParseError, ShapeMismatch, TooFewObservations
from .ols import FactorPanel

__all__ = ["load_panel", "write_panel", "write_text_atomic"]


def _read_csv_matrix(path: str) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        rows = list(reader)
    if len(rows) < 2:
        raise ParseError(f"{path}: need a header row and at least one data row")
    header = rows[0]
    width = len(header)
    data = np.empty((len(rows) - 1, width))
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise ParseError(f"{path}: row {i} has {len(row)} cells, expected {width}")
        for j, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {i}, column {header[j]!r}: cannot parse {cell!r}"
                ) from None
            if not np.isfinite(value):
                raise ParseError(
                    f"{path}: row {i}, column {header[j]!r}: non-finite value {cell!r}"
                )
            data[i - 2, j] = value
    return header, data


def load_panel(returns_path: str, factors_path: str) -> FactorPanel:
    """Read a returns/factors CSV pair into a validated panel."""
    _, returns_tm = _read_csv_matrix(returns_path)
    _, factors_tm = _read_csv_matrix(factors_path)
    if returns_tm.shape[0] != factors_tm.shape[0]:
        raise ShapeMismatch(
            f"returns have {returns_tm.shape[0]} periods but factors have "
            f"{factors_tm.shape[0]}"
        )
    t, p = factors_tm.shape
    if t <= p + 5:
        raise TooFewObservations(f"need T > p + 5, got T={t}, p={p}")
    return FactorPanel(returns=returns_tm.T.copy(), factors=factors_tm)


def _format_row(values) -> str:
    return ",".join(f"{v:.17g}" for v in values)


def write_panel(panel: FactorPanel, returns_path: str, factors_path: str) -> None:
    """Write a panel as a time-major returns/factors CSV pair."""
    n = panel.n_securities
    p = panel.n_factors
    returns_lines = [",".join(f"sec{i + 1}" for i in range(n))]
    returns_lines += [_format_row(row) for row in panel.returns.T]
    write_text_atomic(returns_path, "\n".join(returns_lines) + "\n")
    factors_lines = [",".join(f"factor{k + 1}" for k in range(p))]
    factors_lines += [_format_row(row) for row in panel.factors]
    write_text_atomic(factors_path, "\n".join(factors_lines) + "\n")


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file and rename, so partial files are never left."""
    tmp = path + ".tmp"
    with open(tmp, "w") as handle:
        handle.write(text)
    os.replace(tmp, path)
