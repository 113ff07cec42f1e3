"""Moment reports and their CSV/JSON serializations.

CSV schema (one row per moment order, floats at 17 significant digits):
    k,mode,x,h_or_delta,actual,predicted_thm,predicted_ms,ratio,wall_seconds
Optional fields are empty.  JSON mirrors the same fields.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

CSV_COLUMNS = [
    "k", "mode", "x", "h_or_delta", "actual",
    "predicted_thm", "predicted_ms", "ratio", "wall_seconds",
]


def _fmt(v: float | None) -> str:
    return "" if v is None else format(float(v), ".17g")


def _parse(s: str) -> float | None:
    return None if s == "" else float(s)


@dataclass(frozen=True)
class MomentRow:
    k: int
    actual: float | None
    predicted_thm: float | None
    predicted_ms: float | None
    ratio: float | None


@dataclass(frozen=True)
class MomentReport:
    mode: str
    x: float
    h_or_delta: float
    rows: tuple[MomentRow, ...]
    wall_seconds: float
    version: str = field(default="0.1.0")


def to_csv(report: MomentReport) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.rows:
        w.writerow([
            r.k, report.mode, _fmt(report.x), _fmt(report.h_or_delta),
            _fmt(r.actual), _fmt(r.predicted_thm), _fmt(r.predicted_ms),
            _fmt(r.ratio), _fmt(report.wall_seconds),
        ])
    return out.getvalue()


def from_csv(text: str) -> MomentReport:
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    mode = ""
    x = h_or_delta = wall = 0.0
    for rec in reader:
        mode = rec["mode"]
        x = float(rec["x"])
        h_or_delta = float(rec["h_or_delta"])
        wall = float(rec["wall_seconds"])
        rows.append(MomentRow(
            k=int(rec["k"]),
            actual=_parse(rec["actual"]),
            predicted_thm=_parse(rec["predicted_thm"]),
            predicted_ms=_parse(rec["predicted_ms"]),
            ratio=_parse(rec["ratio"]),
        ))
    return MomentReport(mode=mode, x=x, h_or_delta=h_or_delta,
                        rows=tuple(rows), wall_seconds=wall)


def to_json(report: MomentReport) -> str:
    payload = {
        "mode": report.mode,
        "x": report.x,
        "h_or_delta": report.h_or_delta,
        "wall_seconds": report.wall_seconds,
        "version": report.version,
        "rows": [
            {
                "k": r.k,
                "actual": r.actual,
                "predicted_thm": r.predicted_thm,
                "predicted_ms": r.predicted_ms,
                "ratio": r.ratio,
            }
            for r in report.rows
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_table(report: MomentReport) -> str:
    """Human-readable three-column table (order, actual, formula, ratio)."""
    lines = [f"mode={report.mode} x={report.x:g} param={report.h_or_delta:g}"]
    lines.append(f"{'k':>3}  {'actual':>14}  {'formula':>14}  {'ratio':>8}")
    for r in report.rows:
        actual = f"{r.actual:.5g}" if r.actual is not None else "-"
        pred = f"{r.predicted_thm:.5g}" if r.predicted_thm is not None else "-"
        ratio = f"{r.ratio:.4f}" if r.ratio is not None else "-"
        lines.append(f"{r.k:>3}  {actual:>14}  {pred:>14}  {ratio:>8}")
    return "\n".join(lines) + "\n"


def emit(report: MomentReport, fmt: str, path: str | None) -> None:
    """Write report as csv or json to path, or stdout when path is None."""
    if fmt == "csv":
        text = to_csv(report)
    elif fmt == "json":
        text = to_json(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is None:
        import sys

        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
