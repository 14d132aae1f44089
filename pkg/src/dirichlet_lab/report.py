"""
JSON and CSV encodings of verification reports.

Every float is written with 17 significant digits in both encodings, so a
report parsed back from JSON compares equal to the original and the CSV
and JSON renderings of one run carry the same decimal strings.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .verify import AsymptoticLaw, Checkpoint, VerificationReport

CSV_HEADER = ("x", "measured", "predicted", "deviation")


def fmt(v) -> str:
    """Decimal string for a number: ints as is, floats with 17 significant digits."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    v = float(v)
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return "%.17g" % v


def _dump(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _dump(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    return fmt(obj)


def dumps(obj, indent: int = 2) -> str:
    return _dump(obj, indent, 0) + "\n"


def law_to_dict(law: AsymptoticLaw) -> dict:
    return {
        "kind": law.kind,
        "alpha": law.alpha,
        "coefficient": law.coefficient,
        "intercept_estimate": law.intercept_estimate,
        "paper_anchor": law.anchor,
        "description": law.description,
        "series_tail": law.series_tail,
    }


def law_from_dict(d: dict) -> AsymptoticLaw:
    return AsymptoticLaw(
        kind=d["kind"],
        alpha=d.get("alpha"),
        coefficient=d.get("coefficient"),
        intercept_estimate=d.get("intercept_estimate"),
        description=d.get("description", ""),
        anchor=d.get("paper_anchor", ""),
        series_tail=d.get("series_tail"),
    )


def report_to_dict(r: VerificationReport) -> dict:
    return {
        "law": law_to_dict(r.law),
        "checkpoints": [
            {"x": c.x, "measured": c.measured, "predicted": c.predicted, "deviation": c.deviation}
            for c in r.checkpoints
        ],
        "verdict": r.verdict,
        "tolerances": {
            "tol_final": r.tolerance_final,
            "trend_slack": r.trend_slack,
            "decay_threshold": r.decay_threshold,
        },
        "estimate": r.estimate,
        "notes": dict(r.notes),
    }


def report_from_dict(d: dict) -> VerificationReport:
    tol = d["tolerances"]
    return VerificationReport(
        law=law_from_dict(d["law"]),
        checkpoints=tuple(
            Checkpoint(int(c["x"]), float(c["measured"]), float(c["predicted"]), float(c["deviation"]))
            for c in d["checkpoints"]
        ),
        verdict=d["verdict"],
        tolerance_final=tol.get("tol_final"),
        trend_slack=tol["trend_slack"],
        decay_threshold=tol["decay_threshold"],
        estimate=d.get("estimate"),
        notes=dict(d.get("notes", {})),
    )


def emit_json(r: VerificationReport) -> str:
    return dumps(report_to_dict(r))


def parse_json(text: str) -> VerificationReport:
    return report_from_dict(json.loads(text))


def emit_csv(reports, labels=None) -> str:
    """One checkpoint per row. Several reports get a leading ``report`` column."""
    if isinstance(reports, VerificationReport):
        reports = [reports]
    buf = io.StringIO()
    w = csv.writer(buf)
    multi = len(reports) > 1
    w.writerow((("report",) if multi else ()) + CSV_HEADER)
    for i, r in enumerate(reports):
        label = labels[i] if labels else str(i)
        for c in r.checkpoints:
            row = [fmt(c.x), fmt(c.measured), fmt(c.predicted), fmt(c.deviation)]
            w.writerow(([label] if multi else []) + row)
    return buf.getvalue()


def parse_csv(text: str) -> list:
    """Rows of an emitted CSV as dicts of strings."""
    return list(csv.DictReader(io.StringIO(text)))
