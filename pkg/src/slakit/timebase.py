"""Millisecond time spans shared by transcripts, media, events, and reports.

All span arithmetic in the toolkit is integer milliseconds; spans are
half-open intervals [start_ms, end_ms).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TimeSpan:
    """Half-open interval in integer milliseconds, 0 <= start < end."""

    start_ms: int
    end_ms: int

    def __post_init__(self) -> None:
        if not isinstance(self.start_ms, int) or not isinstance(self.end_ms, int):
            raise ValueError("span bounds must be integers")
        if self.start_ms < 0:
            raise ValueError(f"span start must be >= 0, got {self.start_ms}")
        if self.start_ms >= self.end_ms:
            raise ValueError(
                f"span start must precede end, got {self.start_ms}_{self.end_ms}"
            )

    @property
    def length_ms(self) -> int:
        return self.end_ms - self.start_ms

    def overlaps(self, other: "TimeSpan") -> bool:
        """True when the half-open intervals share at least one millisecond."""
        return self.start_ms < other.end_ms and other.start_ms < self.end_ms

    def as_token(self) -> str:
        """Wire form used in tiers and attributes: ``start_end``."""
        return f"{self.start_ms}_{self.end_ms}"

    @classmethod
    def from_token(cls, token: str) -> "TimeSpan":
        """Parse the ``start_end`` wire form; raises ValueError when invalid."""
        head, sep, tail = token.partition("_")
        if not sep or not head.isdigit() or not tail.isdigit():
            raise ValueError(f"not a span token: {token!r}")
        return cls(int(head), int(tail))
