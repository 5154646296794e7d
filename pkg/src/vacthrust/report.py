"""Deterministic JSON and CSV serialisation of scenario runs."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from . import __version__, constants
from .scenario import RunOutput, Scenario


def _plain(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats to JSON-safe values."""
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
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, complex):
        return {"re": _plain(obj.real), "im": _plain(obj.imag)}
    if isinstance(obj, Path):
        return obj.as_posix()
    return obj


def build_report(s: Scenario, out: RunOutput) -> dict:
    rep = {
        "toolkit": {"name": "vacthrust", "version": __version__},
        "scenario": {"name": s.name, "subcommand": s.subcommand, "parameters": s.parameters},
        "constants": constants.TABLE,
        "conversions": out.conversions,
        "results": out.results,
        "checks": [ch.as_dict() for ch in out.checks],
        "pass": out.passed,
    }
    if out.table is not None:
        rep["table"] = out.table
    return _plain(rep)


def to_json(report: dict) -> str:
    # json uses repr() for floats, which is the shortest round-trip form
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float)):
        return "%.17g" % x
    return str(x)


def _flatten(prefix: str, obj, rows: list):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], rows)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, _fmt(obj)))


def to_csv(report: dict) -> str:
    """Metadata and checks as '#' comment lines, then the results table.

    Runs without a table emit flattened key,value rows for their results.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    meta: list = []
    for key in ("toolkit", "scenario", "constants", "conversions"):
        _flatten(key, report[key], meta)
    for k, v in meta:
        buf.write(f"# {k} = {v}\n")
    for ch in report["checks"]:
        buf.write(
            f"# check {ch['name']}: value={_fmt(ch['value'])} tolerance={_fmt(ch['tolerance'])} pass={_fmt(ch['pass'])}\n"
        )
    buf.write(f"# pass = {_fmt(report['pass'])}\n")
    table = report.get("table")
    if table:
        cols = list(table)
        w.writerow(cols)
        for row in zip(*(table[c] for c in cols)):
            w.writerow([_fmt(v) for v in row])
    else:
        rows: list = []
        _flatten("", report["results"], rows)
        w.writerow(["key", "value"])
        w.writerows(rows)
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    raise ValueError(f"unknown format {fmt!r}")
