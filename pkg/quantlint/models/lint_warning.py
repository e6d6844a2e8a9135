from __future__ import annotations
from dataclasses import dataclass

from quantlint.models.diagnostic import Diagnostic, Phase, Severity
from quantlint.models.span import Span

DISC_MUL = "DISC-MUL"
DISC_NONAME_ASSIGN = "DISC-NONAME-ASSIGN"

RULES = (DISC_MUL, DISC_NONAME_ASSIGN)


@dataclass(frozen=True)
class LintWarning:
    span: Span
    rule: str
    message: str
    severity: Severity = Severity.WARNING

    def to_diagnostic(self) -> Diagnostic:
        return Diagnostic(
            phase=Phase.LINT,
            code=self.rule,
            message=self.message,
            span=self.span,
            severity=self.severity,
        )
