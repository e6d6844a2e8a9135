from __future__ import annotations
from dataclasses import dataclass
import re
from typing import Dict, FrozenSet, List, Tuple

from quantlint.errors import ParseError
from quantlint.models.span import Span

KEYWORDS = frozenset({
    "begin", "in", "end", "float", "of", "named", "fun", "is", "if", "then", "else",
})

# порядок важен: двухсимвольные операторы раньше односимвольных
_TOKEN_SPEC = [
    ("COMMENT", r"--[^\n]*"),
    ("NUMBER", r"\d+(?:\.\d+)?"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r":=|<=|>=|[:;,()+\-*/^?<>=]"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("MISMATCH", r"."),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))
_SUPPRESS_RE = re.compile(r"quantlint:\s*allow\s+([A-Z0-9\-]+(?:\s*,\s*[A-Z0-9\-]+)*)")


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, IDENT, KEYWORD, OP, EOF
    text: str
    span: Span

    def is_op(self, text: str) -> bool:
        return self.kind == "OP" and self.text == text

    def is_keyword(self, text: str) -> bool:
        return self.kind == "KEYWORD" and self.text == text

    def describe(self) -> str:
        return "конец файла" if self.kind == "EOF" else f"'{self.text}'"


def tokenize(source: str) -> Tuple[List[Token], Dict[int, FrozenSet[str]]]:
    """
    Разбивает исходный текст на токены.

    Комментарии отбрасываются, но из комментариев вида
    `-- quantlint: allow DISC-MUL` собирается карта подавлений строка -> правила.
    """
    tokens: List[Token] = []
    suppressions: Dict[int, FrozenSet[str]] = {}
    line, line_start = 1, 0

    for match in _TOKEN_RE.finditer(source):
        kind = match.lastgroup
        text = match.group()
        col = match.start() - line_start + 1
        span = Span(line, col, line, col + len(text))

        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
            continue
        if kind == "SKIP":
            continue
        if kind == "COMMENT":
            found = _SUPPRESS_RE.search(text)
            if found:
                rules = frozenset(r.strip() for r in found.group(1).split(","))
                suppressions[line] = suppressions.get(line, frozenset()) | rules
            continue
        if kind == "MISMATCH":
            raise ParseError(f"недопустимый символ {text!r}", span)
        if kind == "IDENT" and text in KEYWORDS:
            kind = "KEYWORD"
        tokens.append(Token(kind, text, span))

    tokens.append(Token("EOF", "", Span(line, len(source) - line_start + 1, line, len(source) - line_start + 1)))
    return tokens, suppressions
