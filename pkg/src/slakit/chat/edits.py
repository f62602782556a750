"""Structure-preserving edits.

Each operation validates its arguments up front and returns a new document;
the input value is never touched. A sequence of successful edits applied to
a valid document can only yield valid documents.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable

from slakit.chat.diagnostics import ChatEditError
from slakit.chat.model import (
    CHANGEABLE_HEADER_KINDS,
    ChatDocument,
    DependentTier,
    Episode,
    Header,
    INDEX_TIER_CODE,
    INDEX_TIER_RE,
    TERMINATORS,
    TIER_CODE_RE,
    TIME_TIER_CODE,
    Utterance,
    canonical_text,
)
from slakit.timebase import TimeSpan


def append_utterance(
    doc: ChatDocument,
    speaker: str,
    text: str,
    terminator: str,
    span: TimeSpan | None = None,
) -> ChatDocument:
    """Append an utterance to the last episode.

    Raises ChatEditError E003 for an undeclared speaker and E005 for a bad
    terminator or a second terminator inside the text. A span that starts
    before its predecessor is permitted (validate reports warning W008).
    """
    if speaker not in doc.participant_codes():
        raise ChatEditError("E003", f"speaker {speaker!r} is not declared")
    if terminator not in TERMINATORS:
        raise ChatEditError("E005", f"terminator must be one of . ? !, got {terminator!r}")
    text = canonical_text(text)
    if any(tok in TERMINATORS for tok in text.split()):
        raise ChatEditError("E005", "utterance text may not contain a bare terminator token")
    utt = Utterance(speaker=speaker, text=text, terminator=terminator, span=span)
    last = doc.episodes[-1]
    episodes = doc.episodes[:-1] + (replace(last, utterances=last.utterances + (utt,)),)
    return replace(doc, episodes=episodes)


def attach_tier(
    doc: ChatDocument, utterance_index: int, code: str, content: str
) -> ChatDocument:
    """Append a dependent tier to the utterance at the global index.

    Raises E004 for a malformed or reserved tier and E009 when the index is
    out of range. Content is kept verbatim except that line breaks are
    rejected (records are single logical lines).
    """
    if not TIER_CODE_RE.match(code):
        raise ChatEditError("E004", f"tier code must be 3 chars a-z, got {code!r}")
    if code == TIME_TIER_CODE:
        raise ChatEditError("E004", "%tim is reserved; pass a span to append_utterance")
    if "\n" in content or "\r" in content:
        raise ChatEditError("E004", "tier content must be a single line")
    if code == INDEX_TIER_CODE and not INDEX_TIER_RE.match(content):
        raise ChatEditError("E004", f"%ind content does not match the index grammar: {content!r}")
    if not 0 <= utterance_index < doc.utterance_count:
        raise ChatEditError(
            "E009",
            f"utterance index {utterance_index} out of range (document has {doc.utterance_count})",
        )
    utt = doc.utterance_at(utterance_index)
    new_utt = replace(utt, tiers=utt.tiers + (DependentTier(code=code, content=content),))
    return doc.replace_utterance(utterance_index, new_utt)


def new_episode(
    doc: ChatDocument, headers: Iterable[Header | tuple[str, str]] = ()
) -> ChatDocument:
    """Open a new empty episode; @New Episode is implicit in serialization.

    Headers must use changeable kinds (Date, Situation, Activities,
    Room Layout); anything else raises E007.
    """
    built: list[Header] = []
    for h in headers:
        header = h if isinstance(h, Header) else Header(*h)
        if header.kind not in CHANGEABLE_HEADER_KINDS:
            raise ChatEditError(
                "E007",
                f"{header.kind!r} is not a changeable header kind {CHANGEABLE_HEADER_KINDS}",
            )
        if "\n" in header.value or "\r" in header.value:
            raise ChatEditError("E007", f"@{header.kind} value must be a single line")
        built.append(header)
    return replace(doc, episodes=doc.episodes + (Episode(headers=tuple(built)),))
