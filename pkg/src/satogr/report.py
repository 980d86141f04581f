"""Structured verdicts shared by the predicates and equation checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckReport:
    name: str
    verdict: str
    witness: dict | None = None
    params: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_dict(self) -> dict[str, Any]:
        out = {"name": self.name, "verdict": self.verdict, "params": self.params}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    def __bool__(self):
        return self.passed


def combine(name: str, reports, params=None) -> CheckReport:
    """Fail if any report fails, else inconclusive if any is, else pass."""
    reports = list(reports)
    params = params or {}
    for r in reports:
        if r.verdict == FAIL:
            return CheckReport(name, FAIL, r.witness, params, {"first_failure": r.name})
    for r in reports:
        if r.verdict == INCONCLUSIVE:
            return CheckReport(name, INCONCLUSIVE, None, params, {"limited_by": r.name, **r.details})
    return CheckReport(name, PASS, None, params, {"checked": len(reports)})
