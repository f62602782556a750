"""Diagnostic codes and error types for transcript processing.

The code table is closed: every diagnostic the chat layer can produce maps to
exactly one entry here. Errors block; warnings annotate.
"""

from __future__ import annotations

from dataclasses import dataclass

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

#: code -> short rule description
CODE_TABLE = {
    "E001": "missing @Begin",
    "E002": "missing or empty @Participants",
    "E003": "utterance speaker not declared",
    "E004": "malformed dependent tier",
    "E005": "malformed utterance body (terminator missing, duplicated, or non-canonical text)",
    "E006": "dependent tier with no preceding mainline",
    "E007": "malformed header or record",
    "E008": "invalid time span",
    "W008": "time span starts before its predecessor",
    "E009": "reference out of range",
    "E010": "malformed XML",
    "E011": "occasion XML schema violation",
    "E012": "unknown code in filter criteria",
}


@dataclass(frozen=True)
class Diagnostic:
    """One finding against a transcript, ordered by (line, code)."""

    code: str
    line: int
    message: str
    severity: str = SEVERITY_ERROR

    def __post_init__(self) -> None:
        if self.code not in CODE_TABLE:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity == SEVERITY_ERROR

    def render(self) -> str:
        return f"{self.line}: {self.code} {self.severity}: {self.message}"


def error(code: str, line: int, message: str) -> Diagnostic:
    return Diagnostic(code=code, line=line, message=message, severity=SEVERITY_ERROR)


def warning(code: str, line: int, message: str) -> Diagnostic:
    return Diagnostic(code=code, line=line, message=message, severity=SEVERITY_WARNING)


def sort_diagnostics(diags: list[Diagnostic]) -> list[Diagnostic]:
    """Deterministic report order: by line, then code, errors before warnings."""
    unique = list(dict.fromkeys(diags))
    unique.sort(key=lambda d: (d.line, d.code, d.severity, d.message))
    return unique


class ChatError(Exception):
    """Base for transcript failures; carries the diagnostics that caused it."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = sort_diagnostics(diagnostics)
        summary = "; ".join(d.render() for d in self.diagnostics[:4])
        if len(self.diagnostics) > 4:
            summary += f"; +{len(self.diagnostics) - 4} more"
        super().__init__(summary)

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]


class ChatParseError(ChatError):
    """parse_chat found at least one error-severity diagnostic."""


class ChatEditError(ChatError):
    """An editing operation was rejected; the input document is unchanged."""

    def __init__(self, code: str, message: str, line: int = 0):
        super().__init__([error(code, line, message)])


class SlaXmlError(ChatError):
    """Occasion XML could not be read back into a valid document."""


class FilterError(ChatError):
    """filter_view criteria referenced unknown codes."""

    def __init__(self, message: str):
        super().__init__([error("E012", 0, message)])
