"""Figure specifications and input-table schema validation.

A FigureSpec names one or more CSV tables, a figure kind, optional axis
overrides, and an output path.  Every kind declares the columns it
needs; loading validates the header and the cells before any rendering
starts, so a mismatched or empty table never produces an output file.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

KINDS = ("heatmap", "dispersion", "scaling", "entropy-growth", "spectrum")
SCALES = ("linear", "log")

# fixed-schema kinds; heatmap columns depend on the spec (see below)
REQUIRED_COLUMNS = {
    "dispersion": ("k", "omega", "v_g"),
    "scaling": ("alpha", "length", "v_max"),
    "entropy-growth": ("t", "cut", "delta_entropy"),
    "spectrum": ("t", "cut", "lambda1", "lambda2", "lambda_rest_sum"),
}


class SchemaError(Exception):
    """Input table cannot be used for the requested figure."""


@dataclass(frozen=True)
class FigureSpec:
    """Everything needed to turn CSV tables into one image file."""

    kind: str
    inputs: tuple[str, ...]
    out_path: str
    xlabel: str | None = None
    ylabel: str | None = None
    xscale: str | None = None     # None means the kind's default
    yscale: str | None = None
    position_column: str = "site"   # heatmap spatial coordinate
    value_column: str = "delta_m"   # heatmap color field
    overlay_vmax: float | None = None
    cut: int | None = None          # bipartition selector

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; "
                             f"expected one of {', '.join(KINDS)}")
        if not self.inputs:
            raise ValueError("at least one input table is required")
        if self.kind != "dispersion" and len(self.inputs) != 1:
            raise ValueError(f"{self.kind} takes exactly one input table, "
                             f"got {len(self.inputs)}")
        for scale in (self.xscale, self.yscale):
            if scale is not None and scale not in SCALES:
                raise ValueError(f"unknown axis scale {scale!r}; "
                                 f"expected one of {', '.join(SCALES)}")
        if self.overlay_vmax is not None and not self.overlay_vmax > 0:
            raise ValueError("overlay velocity must be positive")

    def required_columns(self) -> tuple[str, ...]:
        if self.kind == "heatmap":
            return ("t", self.position_column, self.value_column)
        return REQUIRED_COLUMNS[self.kind]


def load_table(path: str, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Read the required columns of a CSV table as float arrays.

    Raises SchemaError for anything that makes the table unusable:
    unreadable file, empty file, missing header columns, short rows,
    or cells that do not parse as numbers.
    """
    try:
        with open(path, newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            rows = list(reader)
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read input ({exc})") from None
    if header is None:
        raise SchemaError(f"{path}: empty input, nothing to plot")
    header = [name.strip() for name in header]
    missing = [name for name in required if name not in header]
    if missing:
        raise SchemaError(f"{path}: missing required column(s) "
                          f"{', '.join(missing)}; found "
                          f"{', '.join(header)}")
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    table = {}
    for name in required:
        index = header.index(name)
        column = np.empty(len(rows))
        for i, row in enumerate(rows):
            if index >= len(row):
                raise SchemaError(f"{path}: row {i + 2} has {len(row)} "
                                  f"fields, expected {len(header)}")
            try:
                column[i] = float(row[index])
            except ValueError:
                raise SchemaError(f"{path}: row {i + 2}, column {name}: "
                                  f"not a number: {row[index]!r}") from None
        table[name] = column
    return table
