from __future__ import annotations
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Span:
    """Участок исходного текста: строки и колонки с единицы, конец не включается."""
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    @staticmethod
    def point(line: int, col: int) -> Span:
        return Span(line, col, line, col + 1)

    def cover(self, other: Span) -> Span:
        start = min((self.start_line, self.start_col), (other.start_line, other.start_col))
        end = max((self.end_line, self.end_col), (other.end_line, other.end_col))
        return Span(start[0], start[1], end[0], end[1])

    def contains(self, other: Span) -> bool:
        return (
            (self.start_line, self.start_col) <= (other.start_line, other.start_col)
            and (other.end_line, other.end_col) <= (self.end_line, self.end_col)
        )

    def to_dict(self) -> dict:
        return {
            "start": {"line": self.start_line, "column": self.start_col},
            "end": {"line": self.end_line, "column": self.end_col},
        }

    @staticmethod
    def from_dict(data: dict) -> Span:
        return Span(
            start_line=data["start"]["line"],
            start_col=data["start"]["column"],
            end_line=data["end"]["line"],
            end_col=data["end"]["column"],
        )

    def __str__(self) -> str:
        return f"{self.start_line}:{self.start_col}-{self.end_line}:{self.end_col}"
