"""Seeded random generators for valid transcripts and edit sequences.

Deterministic by construction: every generator takes a random.Random. The
documents produced here always satisfy validate(doc) == [] (monotonic spans,
no warnings), which the round-trip and closure suites rely on.
"""

from __future__ import annotations

import random

from slakit.chat import (
    ChatDocument,
    DependentTier,
    Episode,
    Header,
    Participant,
    TimedComment,
    Utterance,
)
from slakit.timebase import TimeSpan

CODES = ["ROD", "DAL", "PHL", "AN1", "MGR", "CL2", "OBS", "DEV"]
WORDS = [
    "so", "we", "agree", "the", "budget", "review", "action", "deferred",
    "minutes", "next", "week", "issue", "raised", "by", "finance", "team",
    "naïve", "café", "über", "schedule", "risk", "mitigation", "亜細亜",
    "sign-off", "q3", "road-map", "ok", "right",
]
ROLES = ["Analyst", "Manager", "Client", "Developer", "Observer"]
NAMES = ["Rodney", "Dali", "Philip", "Ana", "Marta", "Cleo", "Omar", "Devi"]
TIER_CODES = ["com", "act", "spa", "gpx", "gap"]
CONSTANT_KINDS = ["Media", "Transcriber", "Location Note"]
CHANGEABLE = ["Date", "Situation", "Activities", "Room Layout"]
VALUES = ["weekly meeting", "room 4b", "whiteboard session", "2004-06-01", "budget kickoff"]


def random_participants(rng: random.Random) -> list[Participant]:
    count = rng.randint(1, 4)
    picked = rng.sample(CODES, count)
    parts = []
    for code in picked:
        parts.append(
            Participant(
                code=code,
                name=rng.choice(NAMES),
                role=rng.choice(ROLES),
                birth=rng.choice([None, "1970-01-01", "1985-11-23"]),
                age=rng.choice([None, "34", "51;02"]),
                ses=rng.choice([None, "professional"]),
                sex=rng.choice([None, "female", "male"]),
            )
        )
    return parts


def random_text(rng: random.Random) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(rng.randint(0, 8)))


def random_document(
    rng: random.Random,
    max_episodes: int = 5,
    max_utterances: int = 50,
    max_tiers: int = 3,
    with_comments: bool = True,
) -> ChatDocument:
    """A random valid document with monotonically non-decreasing spans."""
    participants = random_participants(rng)
    codes = [p.code for p in participants]

    constant_headers = tuple(
        Header(kind, rng.choice(VALUES))
        for kind in rng.sample(CONSTANT_KINDS, rng.randint(0, 2))
    )

    n_utts = rng.randint(0, max_utterances)
    n_episodes = rng.randint(1, max_episodes)
    cursor = 0
    episodes = []
    remaining = n_utts
    for ei in range(n_episodes):
        headers = tuple(
            Header(kind, rng.choice(VALUES))
            for kind in rng.sample(CHANGEABLE, rng.randint(0, 2))
        )
        take = remaining if ei == n_episodes - 1 else rng.randint(0, remaining)
        remaining -= take
        utts = []
        for _ in range(take):
            span = None
            if rng.random() < 0.6:
                start = cursor + rng.randint(0, 400)
                span = TimeSpan(start, start + rng.randint(1, 5000))
                cursor = start
            tiers = []
            for _ in range(rng.randint(0, max_tiers)):
                if rng.random() < 0.15:
                    s = rng.randint(0, 50_000)
                    tiers.append(
                        DependentTier(
                            "ind",
                            f"NET{rng.randint(1, 3)}:v{rng.randint(1, 4)} "
                            f"MOVE={rng.choice(['issue', 'action', 'decision'])} "
                            f"{s}_{s + rng.randint(1, 900)}",
                        )
                    )
                else:
                    tiers.append(
                        DependentTier(rng.choice(TIER_CODES), random_text(rng) or "noted")
                    )
            utts.append(
                Utterance(
                    speaker=rng.choice(codes),
                    text=random_text(rng),
                    terminator=rng.choice([".", "?", "!"]),
                    span=span,
                    tiers=tuple(tiers),
                )
            )
        episodes.append(Episode(headers=headers, utterances=tuple(utts)))

    comments = ()
    if with_comments and rng.random() < 0.3:
        s = rng.randint(0, 100_000)
        comments = (
            TimedComment(
                span=TimeSpan(s, s + rng.randint(1, 4000)),
                body=f"NET1:v1 MOVE={rng.choice(['issue', 'action'])}",
            ),
        )

    return ChatDocument(
        participants=tuple(participants),
        constant_headers=constant_headers,
        episodes=tuple(episodes),
        trailing_comments=comments,
    )
