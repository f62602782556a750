"""Loop playback state: start, duration, and the advance offset.

All three can change at any time; a successful change re-arms the loop.
Advancing past the end first clamps the window against the media end, and
only an advance *from* the clamped position signals LoopAtEnd.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from slakit.media.pcm import MediaError


class LoopInvariantError(MediaError):
    """Requested loop fields violate the region invariants."""


class LoopAtEndError(MediaError):
    """No further advance is possible; carries the final state (at_end)."""

    def __init__(self, state: "LoopState"):
        self.state = state
        super().__init__("loop reached the end of the media")


@dataclass(frozen=True)
class LoopState:
    """Region [start, start+duration) over media of media_duration_ms."""

    start_ms: int
    duration_ms: int
    offset_ms: int
    media_duration_ms: int
    at_end: bool = False

    @property
    def end_ms(self) -> int:
        return self.start_ms + self.duration_ms


def _check(start: int, duration: int, offset: int, media: int) -> None:
    if duration <= 0:
        raise LoopInvariantError(f"duration must be positive, got {duration}")
    if offset <= 0:
        raise LoopInvariantError(f"offset must be positive, got {offset}")
    if start < 0:
        raise LoopInvariantError(f"start must be >= 0, got {start}")
    if duration > media:
        raise LoopInvariantError(f"duration {duration} exceeds media {media}")
    if start + duration > media:
        raise LoopInvariantError(
            f"region [{start}, {start + duration}) exceeds media duration {media}"
        )


def create_loop(
    media_duration_ms: int, start_ms: int, duration_ms: int, offset_ms: int
) -> LoopState:
    """A fresh loop over [start, start+duration); raises LoopInvariantError."""
    _check(start_ms, duration_ms, offset_ms, media_duration_ms)
    return LoopState(
        start_ms=start_ms,
        duration_ms=duration_ms,
        offset_ms=offset_ms,
        media_duration_ms=media_duration_ms,
    )


def advance_loop(state: LoopState) -> LoopState:
    """Move the region forward by offset, clamping the final window.

    After k successful advances, start == min(start0 + k*offset,
    media - duration). Advancing from the clamped position raises
    LoopAtEndError whose .state carries at_end=True.
    """
    if state.at_end:
        raise LoopAtEndError(state)
    clamp = state.media_duration_ms - state.duration_ms
    target = state.start_ms + state.offset_ms
    if target > clamp:
        if state.start_ms == clamp:
            raise LoopAtEndError(replace(state, at_end=True))
        return replace(state, start_ms=clamp)
    return replace(state, start_ms=target)


def set_loop(
    state: LoopState,
    start_ms: int | None = None,
    duration_ms: int | None = None,
    offset_ms: int | None = None,
) -> LoopState:
    """Change any of start/duration/offset; the prior state survives errors.

    Overlapping advances (offset < duration) are deliberately allowed. Any
    successful change resets at_end.
    """
    start = state.start_ms if start_ms is None else start_ms
    duration = state.duration_ms if duration_ms is None else duration_ms
    offset = state.offset_ms if offset_ms is None else offset_ms
    _check(start, duration, offset, state.media_duration_ms)
    return LoopState(
        start_ms=start,
        duration_ms=duration,
        offset_ms=offset,
        media_duration_ms=state.media_duration_ms,
        at_end=False,
    )
