"""CSV plot data and JSON-safe conversion of results."""
from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .measure import DiscreteMeasure

MEASURE_HEADER = ("param", "point_re", "point_im", "weight", "cumulative", "tag")
FITNESS_HEADER = ("t_re", "t_im", "dev_iii", "dev_iv", "dev_v", "dev_vi", "verdicts", "consistent")
CORRESPONDENCE_HEADER = ("angle", "point_re", "point_im", "converged", "tag")


def fmt(v) -> str:
    """One CSV cell; floats with 17 significant digits."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return "%.17g" % v
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    return buf.getvalue()


def measure_rows(mu: Optional[DiscreteMeasure]):
    if mu is None:
        return
    for param, z, w, cum, tag in mu.rows():
        yield param, z.real, z.imag, w, cum, tag


def correspondence_rows(c):
    for a, z, conv, tag in c.rows():
        yield a, z.real, z.imag, conv, tag


def fitness_rows(report):
    return [] if report is None else report.rows()


def emit_plot_data(report, path, fmt_: str = "csv") -> str:
    """Write ``report`` (DiscreteMeasure, FitnessReport or None) as CSV to ``path``."""
    if fmt_ != "csv":
        raise ValueError(f"unsupported plot-data format {fmt_!r}")
    if isinstance(report, DiscreteMeasure):
        text = csv_text(MEASURE_HEADER, measure_rows(report))
    else:
        text = csv_text(FITNESS_HEADER, fitness_rows(report))
    write_text(path, text)
    return text


def write_text(path, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror or e}") from e


def jsonable(v):
    """Recursively convert numpy and complex values; non-finite floats become strings."""
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return [jsonable(x) for x in v.tolist()]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        if math.isinf(v.real) or math.isinf(v.imag):
            return "inf"
        return [jsonable(v.real), jsonable(v.imag)]
    if v is None or isinstance(v, str):
        return v
    return str(v)
