from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from quantlint.models.diagnostic import Diagnostic, Phase, Severity

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_OR_IO = 2


def exit_code_for(diagnostics: List[Diagnostic]) -> int:
    """Код выхода зависит только от набора диагностик (строгость уже учтена в severity)."""
    errors = [d for d in diagnostics if d.severity is Severity.ERROR]
    if any(d.phase is Phase.PARSE for d in errors):
        return EXIT_PARSE_OR_IO
    if errors:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _render_name(value: Optional[str]) -> str:
    return "Noname" if value is None else f"Named {value}"


@dataclass
class FileReport:
    file: str
    verdicts: Dict[str, str]
    diagnostics: List[Diagnostic] = field(default_factory=list)
    promotions: Dict[str, Optional[str]] = field(default_factory=dict)
    # {"rho": {var: [показатели]}, "tau": {var: имя или None}}, только при --dump-env
    env: Optional[Dict[str, Dict[str, Any]]] = None

    @property
    def exit_code(self) -> int:
        return exit_code_for(self.diagnostics)

    def render(self) -> str:
        lines = [d.render() for d in self.diagnostics]

        for var, name in self.promotions.items():
            lines.append(f"{self.file}: promoted {var} -> {_render_name(name)}")

        if self.env is not None:
            for var, exponents in self.env.get("rho", {}).items():
                lines.append(f"{self.file}: rho {var} = ({', '.join(exponents)})")
            for var, name in self.env.get("tau", {}).items():
                lines.append(f"{self.file}: tau {var} = {_render_name(name)}")

        summary = " ".join(f"{phase}={verdict}" for phase, verdict in self.verdicts.items())
        lines.append(f"{self.file}: {summary}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "file": self.file,
            "verdicts": dict(self.verdicts),
            "exit_code": self.exit_code,
            "promotions": dict(self.promotions),
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }
        if self.env is not None:
            data["env"] = self.env
        return data

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> FileReport:
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"Неподдерживаемая версия схемы отчёта: {data.get('schema')}")
        return FileReport(
            file=data["file"],
            verdicts=dict(data["verdicts"]),
            diagnostics=[Diagnostic.from_dict(d) for d in data.get("diagnostics", [])],
            promotions=dict(data.get("promotions") or {}),
            env=data.get("env"),
        )
