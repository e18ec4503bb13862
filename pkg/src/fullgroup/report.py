"""Structured check reports shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

SCHEMA_VERSION = "1.0"

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"
ERRATUM = "erratum-confirmed"
ERROR = "error"

OK_VERDICTS = (PASS, INAPPLICABLE, ERRATUM)


@dataclass
class Check:
    name: str
    anchor: str
    verdict: str
    witness: Optional[Any] = None
    detail: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.verdict in OK_VERDICTS


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        self.values.update(other.values)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "title": self.title,
            "ok": self.ok,
            "values": {k: _jsonable(v) for k, v in self.values.items()},
            "checks": [{k: _jsonable(v) for k, v in asdict(c).items()} for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [self.title]
        for k, v in self.values.items():
            lines.append(f"  {k}: {_jsonable(v)}")
        for c in self.checks:
            line = f"  [{c.verdict.upper()}] {c.name}"
            if c.anchor:
                line += f"  ({c.anchor})"
            lines.append(line)
            if c.detail:
                lines.append(f"      {c.detail}")
            if c.witness is not None and not c.ok:
                lines.append(f"      witness: {_jsonable(c.witness)}")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines)


def _jsonable(v: Any) -> Any:
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


def difference_witness(g, h) -> Optional[str]:
    """A window word on which two elements have different cocycle values."""
    if g.system is not h.system:
        return "<different systems>"
    L, R = max(g.L, h.L), max(g.R, h.R)
    a, b = g.refined_code(L, R), h.refined_code(L, R)
    for w in sorted(a):
        if a[w] != b[w]:
            from .subshift import format_cylinder
            return f"{format_cylinder(w, -L)}: {a[w]} != {b[w]}"
    return None


def check_equal(name: str, anchor: str, lhs, rhs) -> Check:
    if lhs == rhs:
        return Check(name, anchor, PASS)
    return Check(name, anchor, FAIL, witness=difference_witness(lhs, rhs))
