"""CSV and JSON writers for scenario reports.

JSON: one document with the run configuration, seeds, summaries and every
per-realization array. Floats are written with 12 significant digits and
non-finite values as ``null``.

CSV: ``<path>`` holds the sweep table. Next to it,
``<stem>.trace-<point>-<realization>.csv`` (time, ergotropy,
ergotropy_over_ss) and ``<stem>.occupations-<point>-<realization>.csv``
(energy, occupation) are written for every successful realization. The
collision scenario writes a single per-collision trace to ``<path>``.
"""
from __future__ import annotations

import csv
import json
import math
import os
from pathlib import Path

import numpy as np

__all__ = ["emit", "to_json", "round_sig", "SWEEP_COLUMNS", "TRACE_COLUMNS", "check_writable"]

SWEEP_COLUMNS = (
    "parameter",
    "e_ss_mean",
    "e_ss_stderr",
    "w_bound_mean",
    "power_mean",
    "power_stderr",
    "tau99_mean",
)
TRACE_COLUMNS = ("time", "ergotropy", "ergotropy_over_ss")
SIG_DIGITS = 12


def round_sig(x):
    """Round floats (recursively through containers) to 12 significant digits."""
    if isinstance(x, dict):
        return {k: round_sig(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [round_sig(v) for v in x]
    if isinstance(x, np.ndarray):
        return round_sig(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return None
        return float(f"{x:.{SIG_DIGITS}g}")
    return x


def _fmt(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return ""
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.{SIG_DIGITS}g}"
    return str(x)


def to_json(report) -> str:
    return json.dumps(round_sig(report.to_dict()), indent=1, sort_keys=True)


def check_writable(path):
    """Raise ``OSError`` unless ``path`` can be created or overwritten."""
    path = Path(path)
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        raise OSError(f"output directory {parent} does not exist")
    if path.exists() and not os.access(path, os.W_OK):
        raise OSError(f"output file {path} is not writable")
    if not os.access(parent, os.W_OK):
        raise OSError(f"output directory {parent} is not writable")


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def emit(report, format, path):
    """Write ``report`` to ``path`` as ``"csv"`` or ``"json"``.

    Returns the list of files written.
    """
    path = Path(path)
    check_writable(path)
    if format == "json":
        path.write_text(to_json(report))
        return [path]
    if format != "csv":
        raise ValueError(f"unknown output format {format!r}")

    if report.collision is not None:
        c = report.collision
        works = np.asarray(c["ergotropy"])
        ref = c["fixed_point_ergotropy"]
        over = works / ref if ref else np.full_like(works, np.nan)
        _write_csv(path, TRACE_COLUMNS + ("excited_population",),
                   zip(c["times"], works, over, c["excited_population"]))
        return [path]

    rows = [[getattr(p, c) for c in SWEEP_COLUMNS] for p in report.points]
    _write_csv(path, SWEEP_COLUMNS, rows)
    written = [path]
    stem = path.with_suffix("")
    for r in report.realizations:
        if not r.ok:
            continue
        tpath = Path(f"{stem}.trace-{r.point}-{r.realization}.csv")
        t = r.trace
        _write_csv(tpath, TRACE_COLUMNS, zip(t.times, t.ergotropy, t.ergotropy_over_ss))
        opath = Path(f"{stem}.occupations-{r.point}-{r.realization}.csv")
        _write_csv(opath, ("energy", "occupation"), zip(r.report.energies, r.report.occupations))
        written += [tpath, opath]
    return written
