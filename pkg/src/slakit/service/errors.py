"""Structured API errors: every module failure maps to exactly one code.

The wire shape is always ``{"error": {"code": ..., "message": ...}}``;
transcript diagnostics keep their table codes (E001..E012, W008), other
modules get stable symbolic codes.
"""

from __future__ import annotations

from slakit.chat.diagnostics import ChatError
from slakit.media.loop import LoopAtEndError, LoopInvariantError
from slakit.media.pcm import MediaDecodeError, MediaError, MediaRangeError
from slakit.media.waveform import SidecarFormatError, UnknownLevelError
from slakit.networks.model import NetworkDefinitionError
from slakit.networks.selections import EnumerationBoundError, UnknownNameError
from slakit.reports.reports import ReportError
from slakit.store.corpus import SelectionRejectedError, StoreLayoutError
from slakit.store.documents import (
    DocumentNotFoundError,
    RevisionConflictError,
    StoreError,
)
from slakit.store.registries import AppendOnlyError


class ApiError(Exception):
    """A failure with a fixed HTTP status and machine code."""

    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(f"{status} {code}: {message}")

    def body(self) -> dict:
        return {"error": {"code": self.code, "message": self.message}}


#: exception class -> (status, code); order matters (subclasses first)
_MAPPING: list[tuple[type, tuple[int, str | None]]] = [
    (ChatError, (422, None)),  # code taken from the leading diagnostic
    (LoopAtEndError, (409, "LOOP_AT_END")),
    (LoopInvariantError, (422, "LOOP_INVARIANT")),
    (MediaDecodeError, (415, "MEDIA_DECODE")),
    (MediaRangeError, (422, "MEDIA_RANGE")),
    (UnknownLevelError, (422, "UNKNOWN_LEVEL")),
    (SidecarFormatError, (500, "SIDECAR_FORMAT")),
    (MediaError, (422, "MEDIA")),
    (NetworkDefinitionError, (422, "NETWORK_DEFINITION")),
    (UnknownNameError, (422, "UNKNOWN_NAME")),
    (EnumerationBoundError, (422, "ENUMERATION_BOUND")),
    (SelectionRejectedError, (422, "INVALID_SELECTION")),
    (ReportError, (422, "REPORT_RANGE")),
    (RevisionConflictError, (409, "CONFLICT")),
    (DocumentNotFoundError, (404, "NOT_FOUND")),
    (StoreLayoutError, (409, "STORE_LAYOUT")),
    (AppendOnlyError, (405, "APPEND_ONLY")),
    (StoreError, (422, "STORE")),
]


def to_api_error(exc: Exception) -> ApiError:
    """Translate a module exception; unmapped exceptions re-raise."""
    if isinstance(exc, ApiError):
        return exc
    for klass, (status, code) in _MAPPING:
        if isinstance(exc, klass):
            if code is None and isinstance(exc, ChatError):
                lead = exc.diagnostics[0]
                return ApiError(422, lead.code, lead.message)
            # str(KeyError) wraps the message in quotes; unwrap for the wire
            message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
            return ApiError(status, code, str(message))
    raise exc
