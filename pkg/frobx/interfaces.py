from __future__ import annotations
from typing import Protocol

from .algebra import FrobeniusStructure
from .models import AuditResult


class FrobeniusStep(Protocol):
    def __call__(self, fs: FrobeniusStructure) -> AuditResult: ...


class ReportRenderer(Protocol):
    def render(self, result: AuditResult) -> str: ...
