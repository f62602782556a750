"""Immutable transcript model.

Every value is frozen; editing operations build new documents and share
unchanged substructure. ``@Begin``, ``@End``, ``@Participants`` and
``@New Episode`` are structural: the serializer emits them and the parser
consumes them, so they never appear as stored Header values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterator

from slakit.timebase import TimeSpan

PARTICIPANT_CODE_RE = re.compile(r"^[A-Z0-9]{3}$")
TIER_CODE_RE = re.compile(r"^[a-z]{3}$")

TERMINATORS = (".", "?", "!")

#: header kinds that live on episodes (repeatable per episode)
CHANGEABLE_HEADER_KINDS = ("Date", "Situation", "Activities", "Room Layout")

#: per-participant attribute headers, serialized as e.g. ``@Birth of ROD:``
PARTICIPANT_HEADER_KINDS = ("Birth", "Age", "SES", "Sex")

#: tier reserved for time alignment; stored as Utterance.span, never in tiers
TIME_TIER_CODE = "tim"

#: tier carrying system-network index selections (machine-parsable grammar)
INDEX_TIER_CODE = "ind"

#: index tier grammar: ``NETID:vN SYS=opt[ SYS=opt]* start_end``
INDEX_TIER_RE = re.compile(
    r"^(?P<network>[A-Za-z0-9_-]+):v(?P<version>[1-9][0-9]*)"
    r"(?P<pairs>(?: [A-Za-z][A-Za-z0-9_-]*=[A-Za-z0-9][A-Za-z0-9_-]*)+)"
    r" (?P<start>[0-9]+)_(?P<end>[0-9]+)$"
)


def canonical_text(raw: str) -> str:
    """Collapse all whitespace runs to single spaces and trim the ends."""
    return " ".join(raw.split())


@dataclass(frozen=True)
class Participant:
    """A declared speaker; ``code`` is the 3-char mainline identifier."""

    code: str
    name: str
    role: str
    birth: str | None = None
    age: str | None = None
    ses: str | None = None
    sex: str | None = None


@dataclass(frozen=True)
class Header:
    """A named header line, ``@{kind}:<TAB>{value}`` on the wire."""

    kind: str
    value: str = ""


@dataclass(frozen=True)
class DependentTier:
    """Annotation line below a mainline: ``%{code}:<TAB>{content}``."""

    code: str
    content: str


@dataclass(frozen=True)
class Utterance:
    """One speaker turn: text tokens, a terminator, optional time alignment."""

    speaker: str
    text: str
    terminator: str
    span: TimeSpan | None = None
    tiers: tuple[DependentTier, ...] = ()


@dataclass(frozen=True)
class Episode:
    """A transcript section; episodes after the first are opened by @New Episode."""

    headers: tuple[Header, ...] = ()
    utterances: tuple[Utterance, ...] = ()


@dataclass(frozen=True)
class TimedComment:
    """Standalone timed record in the trailing comment block before @End."""

    span: TimeSpan
    body: str


@dataclass(frozen=True)
class ChatDocument:
    """A whole transcript. Always holds at least one (possibly empty) episode."""

    participants: tuple[Participant, ...] = ()
    constant_headers: tuple[Header, ...] = ()
    episodes: tuple[Episode, ...] = field(default_factory=lambda: (Episode(),))
    trailing_comments: tuple[TimedComment, ...] = ()

    def __post_init__(self) -> None:
        if not self.episodes:
            object.__setattr__(self, "episodes", (Episode(),))

    @classmethod
    def new(cls, participants: list[Participant] | tuple[Participant, ...]) -> "ChatDocument":
        return cls(participants=tuple(participants))

    def participant_codes(self) -> frozenset[str]:
        return frozenset(p.code for p in self.participants)

    def iter_utterances(self) -> Iterator[tuple[int, int, Utterance]]:
        """Yield (global_index, episode_index, utterance) in document order."""
        n = 0
        for ei, episode in enumerate(self.episodes):
            for utt in episode.utterances:
                yield n, ei, utt
                n += 1

    @property
    def utterance_count(self) -> int:
        return sum(len(ep.utterances) for ep in self.episodes)

    def utterance_at(self, index: int) -> Utterance:
        """Utterance by global document-order index; IndexError when absent."""
        for n, _, utt in self.iter_utterances():
            if n == index:
                return utt
        raise IndexError(index)

    def replace_utterance(self, index: int, new_utt: Utterance) -> "ChatDocument":
        """New document with the utterance at the global index swapped out."""
        n = 0
        for ei, episode in enumerate(self.episodes):
            if index < n + len(episode.utterances):
                local = index - n
                utts = (
                    episode.utterances[:local]
                    + (new_utt,)
                    + episode.utterances[local + 1 :]
                )
                episodes = (
                    self.episodes[:ei]
                    + (replace(episode, utterances=utts),)
                    + self.episodes[ei + 1 :]
                )
                return replace(self, episodes=episodes)
            n += len(episode.utterances)
        raise IndexError(index)
