"""Report documents shared by every verification.

A report is ``{"schema": 1, "kind", "meta", "tables", "violations"}``.  Tables
are lists of flat rows so that each one exports to CSV unchanged.  Output is
deterministic: keys are sorted and rows keep the order the producer gives
them (which is always an order on indices or canonical keys).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Dict, List

SCHEMA = 1


@dataclass
class Report:
    kind: str
    meta: dict = field(default_factory=dict)
    tables: Dict[str, List[dict]] = field(default_factory=dict)
    violations: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violate(self, tag: str, **info) -> None:
        self.violations.append({"tag": tag, **info})

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "meta": self.meta,
            "tables": self.tables,
            "violations": self.violations,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, default=_default) + "\n"

    def table_csv(self, name: str) -> str:
        rows = self.tables[name]
        buf = io.StringIO()
        if not rows:
            return ""
        cols = sorted({k for r in rows for k in r})
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in cols})
        return buf.getvalue()


def _default(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, default=_default)
    return v


def merge(kind: str, parts: Dict[str, Report], meta: dict) -> Report:
    """One report holding the tables and violations of several."""
    out = Report(kind, meta=dict(meta))
    for name, rep in parts.items():
        out.meta[name] = rep.meta
        for t, rows in rep.tables.items():
            out.tables[f"{name}.{t}"] = rows
        for v in rep.violations:
            out.violations.append({"report": name, **v})
    return out
