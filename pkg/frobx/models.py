from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Optional

from .exact_core import LinearMap, Mismatch, diff


class ReportFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witnesses: tuple[Mismatch, ...] = ()
    note: Optional[str] = None

    def witness_dicts(self) -> list[dict]:
        return [w.as_dict() for w in self.witnesses]


@dataclass(frozen=True)
class CheckReport:
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def __add__(self, other: CheckReport) -> CheckReport:
        return CheckReport(self.checks + other.checks)

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def prefixed(self, prefix: str) -> CheckReport:
        return CheckReport(
            tuple(Check(f"{prefix}{c.name}", c.passed, c.witnesses, c.note) for c in self.checks)
        )


def equality_check(name: str, lhs: LinearMap, rhs: LinearMap, limit: int = 8) -> Check:
    witnesses = diff(lhs, rhs, limit)
    return Check(name=name, passed=not witnesses, witnesses=witnesses)


def report_of(*checks: Check) -> CheckReport:
    return CheckReport(tuple(checks))


@dataclass(frozen=True)
class AuditResult:
    command: str
    report: CheckReport
    values: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.report.passed
