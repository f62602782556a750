"""Request bodies and wire helpers for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field

from slakit.media.loop import LoopState
from slakit.networks.model import IndexEvent
from slakit.timebase import TimeSpan


class SpanBody(BaseModel):
    start_ms: int
    end_ms: int

    def to_span(self) -> TimeSpan:
        return TimeSpan(self.start_ms, self.end_ms)


class ProjectBody(BaseModel):
    title: str


class ParticipantBody(BaseModel):
    contact_id: str | None = None
    code: str | None = None
    name: str | None = None
    role: str | None = None
    birth: str | None = None
    age: str | None = None
    ses: str | None = None
    sex: str | None = None


class OccasionBody(BaseModel):
    occasion_id: str | None = None
    title: str = ""
    participants: list[ParticipantBody] = Field(min_length=1)


class LoopCreateBody(BaseModel):
    start_ms: int
    duration_ms: int
    offset_ms: int
    contact_id: str = ""


class LoopPatchBody(BaseModel):
    start_ms: int | None = None
    duration_ms: int | None = None
    offset_ms: int | None = None


class UtteranceBody(BaseModel):
    speaker: str
    text: str
    terminator: str
    span: SpanBody | None = None
    loop_id: str | None = None
    expected_revision: int | None = None


class TierBody(BaseModel):
    code: str
    content: str
    expected_revision: int | None = None


class HeaderBody(BaseModel):
    kind: str
    value: str = ""


class EpisodeBody(BaseModel):
    headers: list[HeaderBody] = []
    place_id: str | None = None
    expected_revision: int | None = None


class IndexEventBody(BaseModel):
    network_id: str
    version: int
    selection: dict[str, str]
    span: SpanBody | None = None
    loop_id: str | None = None
    note: str = ""
    author: str = ""


class ContactBody(BaseModel):
    code: str
    name: str
    role: str
    birth: str | None = None
    age: str | None = None
    ses: str | None = None
    sex: str | None = None
    contact_id: str | None = None


class PlaceBody(BaseModel):
    situation: str
    activities: str = ""
    room_layout: str = ""


class ResourceBody(BaseModel):
    kind: str
    location: str
    description: str = ""
    collected_at: str | None = None
    occasion_ids: list[str] = []


class SystemBody(BaseModel):
    name: str
    entry: str = "TRUE"
    options: list[str]


class NetworkBody(BaseModel):
    name: str
    systems: list[SystemBody]
    network_id: str | None = None


class NetworkReviseBody(BaseModel):
    systems: list[SystemBody]


def loop_state_json(loop_id: str, occasion_id: str, state: LoopState) -> dict:
    """Every loop response carries the current span for timing registration."""
    return {
        "loop_id": loop_id,
        "occasion_id": occasion_id,
        "start_ms": state.start_ms,
        "duration_ms": state.duration_ms,
        "offset_ms": state.offset_ms,
        "media_duration_ms": state.media_duration_ms,
        "at_end": state.at_end,
        "span": {"start_ms": state.start_ms, "end_ms": state.start_ms + state.duration_ms},
    }


def event_json(event: IndexEvent) -> dict:
    return {
        "event_id": event.event_id,
        "occasion_id": event.occasion_id,
        "network_id": event.network_id,
        "version": event.network_version,
        "selection": event.selection.as_dict(),
        "span": {"start_ms": event.span.start_ms, "end_ms": event.span.end_ms},
        "note": event.note,
        "author": event.author,
        "created_at": event.created_at,
    }
