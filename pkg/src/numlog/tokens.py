"""Plain data types shared by extraction and tagging."""
from __future__ import annotations

import enum
from dataclasses import dataclass


class TokenKind(enum.Enum):
    PURE_PATTERN = "pattern"
    PURE_NUMBER = "number"
    NUMERIC_VARIABLE = "variable"
    OVERSIZED = "oversized"
    LEADING_ZERO = "leading_zero"


class Strategy(enum.IntEnum):
    """Storage strategy of a tag group; the value is the on-disk byte."""
    DELTA = 0
    RAW = 1
    VERBATIM = 2

    @classmethod
    def parse(cls, name: str) -> "Strategy":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown strategy {name!r}") from None


@dataclass(frozen=True)
class NumericToken:
    kind: TokenKind
    raw: bytes
    segments: tuple[int, ...]
    start: int
    letter: str | None = None  # rule letter, PURE_PATTERN only

    @property
    def span(self) -> tuple[int, int]:
        return self.start, len(self.raw)

    @property
    def end(self) -> int:
        return self.start + len(self.raw)
