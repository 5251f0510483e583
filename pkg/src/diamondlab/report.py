"""Verification reports: exact values rendered as "p/q", stable JSON/CSV/text output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _plain(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


@dataclass
class Report:
    """Outcome of one verification: how many cases ran and which failed."""

    table: str
    cases_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violate(self, **info) -> None:
        self.violations.append(info)

    def as_dict(self) -> dict:
        out = {
            "table": self.table,
            "cases_checked": self.cases_checked,
            "violations": self.violations,
            "ok": self.ok,
        }
        if self.notes:
            out["notes"] = self.notes
        if self.values:
            out["values"] = self.values
        return _plain(out)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        if not self.rows:
            return ""
        buf = io.StringIO()
        cols = list(self.rows[0])
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow(_plain(row))
        return buf.getvalue()

    def to_text(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{status} {self.table}: cases={self.cases_checked} violations={len(self.violations)}"]
        for k, v in _plain(self.values).items():
            lines.append(f"  {k} = {v}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        for v in self.violations[:20]:
            lines.append(f"  violation: {json.dumps(_plain(v), sort_keys=True)}")
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more")
        return "\n".join(lines) + "\n"

    def render(self, fmt_name: str) -> str:
        if fmt_name == "json":
            return self.to_json()
        if fmt_name == "csv":
            return self.to_csv() or self.to_json()
        return self.to_text()
