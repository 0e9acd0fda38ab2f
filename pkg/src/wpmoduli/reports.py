"""Verifier reports and their CSV / JSON serialisations.

A report row carries a ``status`` of ``pass`` or ``fail`` only when the
inequality being checked has explicit constants; everything resting on an
unspecified universal constant is tagged ``trend``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import mpmath

REPORT_VERSION = 1

VERIFY_COLUMNS = ("lemma", "inputs", "lhs", "rhs", "ratio", "status")
SWEEP_COLUMNS = ("g", "L", "mode", "value", "leading", "ratio")

PASS, FAIL, TREND = "pass", "fail", "trend"


def fmt(value: Any, digits: int = 20) -> str:
    """Deterministic text for a cell; mpf values are printed at fixed digits."""
    if value is None:
        return ""
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, digits, min_fixed=-4, max_fixed=6)
    if isinstance(value, float):
        return mpmath.nstr(mpmath.mpf(value), digits, min_fixed=-4, max_fixed=6)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass
class VerifierReport:
    """Rows of one verifier run plus an overall verdict."""

    lemma: str
    rows: list[dict[str, Any]] = field(default_factory=list)
    columns: Sequence[str] = VERIFY_COLUMNS
    notes: list[str] = field(default_factory=list)
    trend_ok: bool | None = None

    def add(self, inputs: str, lhs=None, rhs=None, ratio=None, status: str = TREND, **extra) -> None:
        row = {"lemma": self.lemma, "inputs": inputs, "lhs": lhs, "rhs": rhs, "ratio": ratio, "status": status}
        row.update(extra)
        self.rows.append(row)

    @property
    def failures(self) -> list[dict[str, Any]]:
        return [r for r in self.rows if r.get("status") == FAIL]

    @property
    def verdict(self) -> str:
        if self.failures:
            return FAIL
        statuses = {r.get("status") for r in self.rows}
        if statuses and statuses <= {PASS}:
            return PASS
        return TREND

    @property
    def hard_failure(self) -> bool:
        return bool(self.failures)

    def summary(self) -> str:
        extra = ""
        if self.trend_ok is not None:
            extra = f", trend {'consistent' if self.trend_ok else 'NOT consistent'}"
        return f"{self.lemma}: {self.verdict} ({len(self.rows)} rows{extra})"

    def to_csv(self, digits: int = 20) -> str:
        return write_csv(self.rows, self.columns, digits, title=f"lemma={self.lemma} verdict={self.verdict}")

    def to_json(self, digits: int = 20) -> str:
        return write_json(self.rows, self.columns, digits)


def write_csv(rows: Iterable[dict[str, Any]], columns: Sequence[str], digits: int = 20, title: str = "") -> str:
    buf = io.StringIO()
    buf.write(f"# wpmoduli report v{REPORT_VERSION} columns={','.join(columns)}")
    if title:
        buf.write(f" {title}")
    buf.write("\n")
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c), digits) for c in columns])
    return buf.getvalue()


def write_json(rows: Iterable[dict[str, Any]], columns: Sequence[str], digits: int = 20) -> str:
    out = [{c: fmt(row.get(c), digits) for c in columns} for row in rows]
    return json.dumps(out, indent=1, sort_keys=False) + "\n"


def read_json(text: str) -> list[dict[str, str]]:
    return json.loads(text)


def read_csv(text: str) -> list[dict[str, str]]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def monotone(values: Sequence, decreasing: bool = True, strict: bool = False) -> bool:
    pairs = list(zip(values, values[1:]))
    if decreasing:
        return all((b < a) if strict else (b <= a) for a, b in pairs)
    return all((b > a) if strict else (b >= a) for a, b in pairs)
