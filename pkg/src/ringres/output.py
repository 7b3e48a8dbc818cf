"""
Deterministic CSV and JSON writers shared by the CLI and the reproduction
driver.

Floats are written with ``%.17g`` so that a value read back is the value
written, and identical inputs give byte-identical files.
"""

import csv
import io
import json
import os
import platform
import sys
from pathlib import Path

import numpy as np


def fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    if v is None:
        return ""
    return str(v)


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row of length {len(row)} under a header of length {len(header)}")
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows):
    text = csv_text(header, rows)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def write_json(path, obj):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")
    return path


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Path):
        return str(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def environment():
    """Versions recorded in manifests."""
    import scipy

    from . import __version__

    return {
        "ringres": __version__,
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "platform": platform.platform(),
    }


def worker_count(default=None):
    """Worker processes allowed; ``RINGRES_THREADS`` caps the count."""
    n = default or os.cpu_count() or 1
    env = os.environ.get("RINGRES_THREADS")
    if env:
        try:
            cap = int(env)
        except ValueError:
            cap = 1
        n = min(n, max(1, cap))
    return max(1, n)
