"""Shared CSV/JSON loading for the figure scripts.

Every loader fails loudly: a missing file, an empty table or a missing
column aborts with a diagnostic listing what was expected and what was
found. No values are ever invented.
"""

import csv
import json
import sys

import numpy as np


class SchemaError(SystemExit):
    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def load_table(path, required):
    """Read a delimited file into {column: list of strings}.

    `required` is the set of column names the caller needs; extra columns
    are fine, missing ones are fatal with a diagnostic.
    """
    try:
        with open(path, newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None:
                raise SchemaError(f"{path}: empty file, no header row")
            missing = [c for c in required if c not in reader.fieldnames]
            if missing:
                raise SchemaError(
                    f"{path}: missing columns {missing}; "
                    f"found {reader.fieldnames}")
            rows = list(reader)
    except OSError as e:
        raise SchemaError(f"{path}: {e}") from None
    if not rows:
        raise SchemaError(f"{path}: header only, no data rows")
    return {c: [r[c] for r in rows] for c in reader.fieldnames}


def column(table, name):
    """Column as a float array; non-numeric entries become NaN."""
    out = np.empty(len(table[name]))
    for i, v in enumerate(table[name]):
        try:
            out[i] = float(v)
        except ValueError:
            out[i] = np.nan
    return out


def as_grid(x, y, v):
    """Reshape row-major (x, y, value) triples into xs, ys, (nx, ny) grid."""
    xs = np.unique(x)
    ys = np.unique(y)
    if xs.size * ys.size != v.size:
        raise SchemaError(
            f"cannot arrange {v.size} rows into a {xs.size} x {ys.size} grid")
    order = np.lexsort((y, x))
    return xs, ys, v[order].reshape(xs.size, ys.size)


def load_json(path, required):
    try:
        data = json.loads(open(path).read())
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"{path}: {e}") from None
    missing = [k for k in required if k not in data]
    if missing:
        raise SchemaError(f"{path}: missing keys {missing}; "
                          f"found {sorted(data)}")
    return data


def save(fig, path):
    fig.savefig(path, dpi=150, bbox_inches="tight")
    print(f"wrote {path}")
