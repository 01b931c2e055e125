"""Report records and their JSON / CSV / table renderings.

A report is a list of flat dict records, one per (instance, task, e) or per
verification check.  Values are exact rationals serialized as
``{"num": ..., "den": ...}``; decimals appear only in CSV and tables.
"""

from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from decimal import Decimal, localcontext
from fractions import Fraction

CSV_COLUMNS = (
    "instance",
    "task",
    "e",
    "num",
    "den",
    "value_decimal",
    "candidate_count",
    "paths_agree",
    "C_emp_num",
    "C_emp_den",
    "warnings",
)


def rational(x) -> dict | None:
    if x is None:
        return None
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def from_rational(d) -> Fraction | None:
    if d is None:
        return None
    return Fraction(d["num"], d["den"])


def decimal(x, digits: int = 12) -> str:
    if x is None:
        return ""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def matrix_json(M, K) -> list:
    return [[K.to_json(a) for a in row] for row in M]


def document(records: list, *, timestamp: bool = True) -> dict:
    doc = {"tool": "frobsig", "records": records}
    if timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return doc


def to_json(records: list, *, timestamp: bool = True) -> str:
    return json.dumps(document(records, timestamp=timestamp), indent=2) + "\n"


def strip_timestamp(text: str) -> dict:
    doc = json.loads(text)
    doc.pop("timestamp", None)
    return doc


def to_csv(records: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        v = r.get("value")
        c = r.get("C_emp")
        agree = r.get("paths_agree")
        w.writerow(
            [
                r.get("instance", ""),
                r.get("task", ""),
                "" if r.get("e") is None else r["e"],
                "" if v is None else v["num"],
                "" if v is None else v["den"],
                decimal(from_rational(v)),
                "" if r.get("candidate_count") is None else r["candidate_count"],
                "" if agree is None else str(agree).lower(),
                "" if c is None else c["num"],
                "" if c is None else c["den"],
                "; ".join(r.get("warnings", ())),
            ]
        )
    return buf.getvalue()


def _fmt_rational(d) -> str:
    x = from_rational(d)
    return "" if x is None else str(x)


def to_table(records: list) -> str:
    header = ("instance", "task", "e", "value", "~", "cands", "agree", "C_emp", "note")
    rows = []
    for r in records:
        note = r.get("check") or ""
        if r.get("task") == "verify":
            note = f"{r['check']}: {'ok' if r['passed'] else 'FAIL'}"
        elif r.get("level") is not None:
            note = f"level {r['level']} over {r['field']}"
        elif r.get("length") is not None:
            note = f"length {r['length']}"
        agree = r.get("paths_agree")
        rows.append(
            (
                str(r.get("instance", "")),
                str(r.get("task", "")),
                "" if r.get("e") is None else str(r["e"]),
                _fmt_rational(r.get("value")),
                decimal(from_rational(r.get("value")), 6),
                "" if r.get("candidate_count") is None else str(r["candidate_count"]),
                "" if agree is None else ("yes" if agree else "NO"),
                _fmt_rational(r.get("C_emp")),
                note,
            )
        )
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(records: list, fmt: str) -> str:
    if fmt == "json":
        return to_json(records)
    if fmt == "csv":
        return to_csv(records)
    if fmt == "table":
        return to_table(records)
    raise ValueError(f"unknown format {fmt!r}")
