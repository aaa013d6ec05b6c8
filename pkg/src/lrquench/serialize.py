"""Deterministic CSV/JSON writers.

All files are written atomically (temp file in the target directory,
then rename) and contain nothing run-dependent: no timestamps, no
hostnames, no float formatting that varies between runs.  Floats are
serialized with 17 significant digits so values round-trip exactly.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def atomic_write_text(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_table_csv(path: str, header: list[str], rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def _plain(obj):
    """Recursively convert numpy containers to JSON-native types."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def write_json(path: str, obj):
    atomic_write_text(path, json.dumps(_plain(obj), indent=2) + "\n")


def write_table_json(path: str, header: list[str], rows):
    records = [dict(zip(header, row)) for row in rows]
    write_json(path, records)


def write_table(path_prefix: str, fmt: str, header: list[str], rows) -> str:
    """Write one table at ``{prefix}.{ext}`` in the requested format."""
    rows = list(rows)
    if fmt == "csv":
        path = path_prefix + ".csv"
        write_table_csv(path, header, rows)
    elif fmt == "json":
        path = path_prefix + ".json"
        write_table_json(path, header, rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return path
