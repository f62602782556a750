"""Read-only filtered views of a transcript.

A view renders the canonical lines with utterances narrowed by speaker,
tiers narrowed by code, episodes narrowed to a range, and whole episodes
collapsible to a one-line summary. The document itself is untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from slakit.chat.diagnostics import FilterError
from slakit.chat.model import ChatDocument, PARTICIPANT_HEADER_KINDS, TIME_TIER_CODE
from slakit.chat.serializer import (
    format_header,
    format_mainline,
    format_participants,
    format_tier,
    format_time_tier,
)


@dataclass(frozen=True)
class TranscriptView:
    """Visible lines in document order."""

    lines: tuple[str, ...]

    def render(self) -> str:
        return "\n".join(self.lines) + "\n" if self.lines else ""


def filter_view(
    doc: ChatDocument,
    speakers: Iterable[str] | None = None,
    tier_codes: Iterable[str] | None = None,
    episode_range: tuple[int, int] | None = None,
    collapsed_episodes: Iterable[int] = (),
) -> TranscriptView:
    """Project the document onto the requested slice.

    ``speakers=None`` shows every speaker; a set shows only those speakers'
    mainlines and their tiers. ``tier_codes=None`` shows all tiers; an empty
    set shows mainlines only (``tim`` counts as a tier code here).
    ``episode_range`` is an inclusive pair of 0-based indices; episodes
    outside it disappear entirely. Criteria naming unknown codes or episode
    indices raise FilterError (E012).
    """
    speaker_set = None if speakers is None else frozenset(speakers)
    tier_set = None if tier_codes is None else frozenset(tier_codes)
    collapsed = frozenset(collapsed_episodes)

    if speaker_set is not None:
        unknown = speaker_set - doc.participant_codes()
        if unknown:
            raise FilterError(f"unknown speaker codes in criteria: {sorted(unknown)}")
    if tier_set is not None:
        known = {t.code for _, _, u in doc.iter_utterances() for t in u.tiers}
        known.add(TIME_TIER_CODE)
        unknown = tier_set - known
        if unknown:
            raise FilterError(f"unknown tier codes in criteria: {sorted(unknown)}")
    n_episodes = len(doc.episodes)
    if episode_range is not None:
        first, last = episode_range
        if not (0 <= first <= last < n_episodes):
            raise FilterError(f"episode range {episode_range} outside 0..{n_episodes - 1}")
    bad = {i for i in collapsed if not 0 <= i < n_episodes}
    if bad:
        raise FilterError(f"unknown episode indices in criteria: {sorted(bad)}")

    lines: list[str] = ["@Begin", format_participants(doc)]
    for part in doc.participants:
        for kind, value in zip(
            PARTICIPANT_HEADER_KINDS, (part.birth, part.age, part.ses, part.sex)
        ):
            if value is not None:
                lines.append(f"@{kind} of {part.code}:\t{value}")
    for header in doc.constant_headers:
        lines.append(format_header(header))

    for ei, episode in enumerate(doc.episodes):
        if episode_range is not None and not (episode_range[0] <= ei <= episode_range[1]):
            continue
        if ei > 0:
            lines.append("@New Episode")
        for header in episode.headers:
            lines.append(format_header(header))
        if ei in collapsed:
            lines.append(f"({len(episode.utterances)} utterances collapsed)")
            continue
        for utt in episode.utterances:
            if speaker_set is not None and utt.speaker not in speaker_set:
                continue
            lines.append(format_mainline(utt))
            if utt.span is not None and (tier_set is None or TIME_TIER_CODE in tier_set):
                lines.append(format_time_tier(utt))
            for tier in utt.tiers:
                if tier_set is not None and tier.code not in tier_set:
                    continue
                lines.append(format_tier(tier))

    for comment in doc.trailing_comments:
        lines.append(f"@Comment:\t{comment.body} {comment.span.as_token()}")
    lines.append("@End")
    return TranscriptView(lines=tuple(lines))
