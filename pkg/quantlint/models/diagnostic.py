from __future__ import annotations
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional

from quantlint.models.dims import Dims
from quantlint.models.span import Span


class Phase(str, Enum):
    PARSE = "parse"
    DIMS = "dims"
    QUANT = "quant"
    LINT = "lint"


PHASE_ORDER = {phase: index for index, phase in enumerate(Phase)}


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    phase: Phase
    code: str
    message: str
    span: Span
    severity: Severity = Severity.ERROR
    file: str = ""
    related: Dict[str, Any] = field(default_factory=dict)

    @staticmethod
    def from_error(error, phase: Phase, fallback: Optional[Span] = None,
                   severity: Severity = Severity.ERROR) -> Diagnostic:
        """Строит диагностику из QuantlintError; место берётся из ошибки или fallback."""
        related: Dict[str, Any] = {}
        names = getattr(error, "names", ())
        if names:
            related["names"] = [str(n) for n in names]
        for attr in ("expected", "found"):
            value = getattr(error, attr, None)
            if isinstance(value, Dims):
                related[attr] = str(value)
            elif isinstance(value, tuple) and value:
                related["expected_tokens"] = list(value)
        call_sites = getattr(error, "call_sites", [])
        if call_sites:
            related["call_sites"] = [str(s) for s in call_sites]

        return Diagnostic(
            phase=phase,
            code=error.code,
            message=error.message,
            span=error.span or fallback or Span.point(1, 1),
            severity=severity,
            related=related,
        )

    def in_file(self, file: str) -> Diagnostic:
        return replace(self, file=file)

    @property
    def sort_key(self) -> tuple:
        return (self.file, self.span.start_line, self.span.start_col, PHASE_ORDER[self.phase], self.code)

    def render(self) -> str:
        return f"{self.file}:{self.span}: {self.severity.value}[{self.code}] {self.phase.value}: {self.message}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "file": self.file,
            "span": self.span.to_dict(),
            "phase": self.phase.value,
            "code": self.code,
            "severity": self.severity.value,
            "message": self.message,
            "related": self.related,
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> Diagnostic:
        return Diagnostic(
            phase=Phase(data["phase"]),
            code=data["code"],
            message=data["message"],
            span=Span.from_dict(data["span"]),
            severity=Severity(data.get("severity", "error")),
            file=data.get("file", ""),
            related=dict(data.get("related") or {}),
        )
