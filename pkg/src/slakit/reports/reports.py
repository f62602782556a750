"""Report computation over index events.

Span math is exact integer milliseconds; overlapping spans count once in
coverage. Effort estimates apply the observed multipliers: transcription
takes 4-5x the record length, indexing a fifth to a quarter of that.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from slakit.networks.model import IndexEvent


class ReportError(ValueError):
    """Report inputs out of range (bad duration or span)."""


def union_intervals(spans: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Merge half-open [start, end) intervals; adjacent runs coalesce."""
    ordered = sorted(spans)
    merged: list[tuple[int, int]] = []
    for start, end in ordered:
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return merged


def _covered(intervals: Sequence[tuple[int, int]]) -> int:
    return sum(end - start for start, end in intervals)


@dataclass(frozen=True)
class NetworkCoverage:
    network_id: str
    covered_ms: int
    intervals: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CoverageReport:
    occasion_id: str
    duration_ms: int
    covered_ms: int
    coverage_ratio: float
    intervals: tuple[tuple[int, int], ...]
    networks: tuple[NetworkCoverage, ...]


@dataclass(frozen=True)
class OptionLocation:
    system: str
    option: str
    spans: tuple[tuple[int, int], ...]
    relative: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class LocationReport:
    occasion_id: str
    duration_ms: int
    entries: tuple[OptionLocation, ...]


@dataclass(frozen=True)
class EffortEstimate:
    record_minutes: float
    transcription_minutes: tuple[float, float]
    indexing_minutes: tuple[float, float]


def _check_spans(duration_ms: int, events: Sequence[IndexEvent]) -> None:
    if duration_ms <= 0:
        raise ReportError(f"duration must be positive, got {duration_ms}")
    for event in events:
        if event.span.end_ms > duration_ms:
            raise ReportError(
                f"event {event.event_id} span {event.span.as_token()} "
                f"exceeds duration {duration_ms}"
            )


def coverage_report(
    duration_ms: int, events: Iterable[IndexEvent], occasion_id: str = ""
) -> CoverageReport:
    """How much of the record the events cover, overall and per network."""
    events = list(events)
    _check_spans(duration_ms, events)
    overall = union_intervals((e.span.start_ms, e.span.end_ms) for e in events)
    networks = []
    for network_id in sorted({e.network_id for e in events}):
        intervals = union_intervals(
            (e.span.start_ms, e.span.end_ms)
            for e in events
            if e.network_id == network_id
        )
        networks.append(
            NetworkCoverage(
                network_id=network_id,
                covered_ms=_covered(intervals),
                intervals=tuple(intervals),
            )
        )
    covered = _covered(overall)
    return CoverageReport(
        occasion_id=occasion_id,
        duration_ms=duration_ms,
        covered_ms=covered,
        coverage_ratio=covered / duration_ms,
        intervals=tuple(overall),
        networks=tuple(networks),
    )


def code_location_report(
    duration_ms: int, events: Iterable[IndexEvent], occasion_id: str = ""
) -> LocationReport:
    """Where each selected (system, option) code lands, absolute and relative."""
    events = list(events)
    _check_spans(duration_ms, events)
    spans_by_code: dict[tuple[str, str], list[tuple[int, int]]] = {}
    for event in events:
        for system, option in event.selection.choices:
            spans_by_code.setdefault((system, option), []).append(
                (event.span.start_ms, event.span.end_ms)
            )
    entries = []
    for (system, option), spans in sorted(spans_by_code.items()):
        spans.sort()
        entries.append(
            OptionLocation(
                system=system,
                option=option,
                spans=tuple(spans),
                relative=tuple(
                    (start / duration_ms, end / duration_ms) for start, end in spans
                ),
            )
        )
    return LocationReport(
        occasion_id=occasion_id, duration_ms=duration_ms, entries=tuple(entries)
    )


def effort_estimate(record_minutes: float) -> EffortEstimate:
    """Transcription runs 4-5x the record; indexing a fifth to a quarter of that."""
    if record_minutes <= 0:
        raise ReportError(f"record length must be positive, got {record_minutes}")
    transcription = (4.0 * record_minutes, 5.0 * record_minutes)
    indexing = (transcription[0] / 5.0, transcription[1] / 4.0)
    return EffortEstimate(
        record_minutes=record_minutes,
        transcription_minutes=transcription,
        indexing_minutes=indexing,
    )


def report_to_json(report: CoverageReport | LocationReport | EffortEstimate) -> str:
    """Stable JSON rendering (documented in docs/report-schema.md)."""
    kind = {
        CoverageReport: "coverage",
        LocationReport: "locations",
        EffortEstimate: "effort",
    }[type(report)]
    return json.dumps({"kind": kind, **asdict(report)}, sort_keys=True)
