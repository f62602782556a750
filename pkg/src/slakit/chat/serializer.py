"""Canonical plain-text emission.

One canonical form exists per document: LF endings, TAB after every record
colon, ``@Begin`` first, ``@End`` last, ``@New Episode`` before every episode
after the first, the ``%tim`` tier directly under its mainline. ``parse_chat``
inverts this byte-exactly.
"""

from __future__ import annotations

from slakit.chat.model import (
    ChatDocument,
    DependentTier,
    Header,
    PARTICIPANT_HEADER_KINDS,
    TIME_TIER_CODE,
    Utterance,
)

#: structural path of a record -> used to map validator findings to lines
Location = tuple


def format_participants(doc: ChatDocument) -> str:
    entries = ", ".join(f"{p.code} {p.name} {p.role}" for p in doc.participants)
    return f"@Participants:\t{entries}"


def format_header(header: Header) -> str:
    return f"@{header.kind}:\t{header.value}"


def format_mainline(utt: Utterance) -> str:
    body = f"{utt.text} {utt.terminator}" if utt.text else utt.terminator
    return f"*{utt.speaker}:\t{body}"


def format_time_tier(utt: Utterance) -> str:
    assert utt.span is not None
    return f"%{TIME_TIER_CODE}:\t{utt.span.as_token()}"


def format_tier(tier: DependentTier) -> str:
    return f"%{tier.code}:\t{tier.content}"


def numbered_lines(doc: ChatDocument) -> tuple[list[str], dict[Location, int]]:
    """Canonical lines plus a map from structural record paths to 1-based lines.

    Path keys: ``("participants",)``, ``("pheader", p_idx, kind)``,
    ``("constant", idx)``, ``("eheader", ep_idx, h_idx)``, ``("utterance", n)``,
    ``("tier", n, t_idx)``, ``("comment", idx)`` where ``n`` is the global
    utterance index.
    """
    lines: list[str] = ["@Begin"]
    where: dict[Location, int] = {}

    lines.append(format_participants(doc))
    where[("participants",)] = len(lines)

    for pi, part in enumerate(doc.participants):
        for kind, value in zip(
            PARTICIPANT_HEADER_KINDS, (part.birth, part.age, part.ses, part.sex)
        ):
            if value is not None:
                lines.append(f"@{kind} of {part.code}:\t{value}")
                where[("pheader", pi, kind)] = len(lines)

    for ci, header in enumerate(doc.constant_headers):
        lines.append(format_header(header))
        where[("constant", ci)] = len(lines)

    n = 0
    for ei, episode in enumerate(doc.episodes):
        if ei > 0:
            lines.append("@New Episode")
        for hi, header in enumerate(episode.headers):
            lines.append(format_header(header))
            where[("eheader", ei, hi)] = len(lines)
        for utt in episode.utterances:
            lines.append(format_mainline(utt))
            where[("utterance", n)] = len(lines)
            if utt.span is not None:
                lines.append(format_time_tier(utt))
            for ti, tier in enumerate(utt.tiers):
                lines.append(format_tier(tier))
                where[("tier", n, ti)] = len(lines)
            n += 1

    for mi, comment in enumerate(doc.trailing_comments):
        lines.append(f"@Comment:\t{comment.body} {comment.span.as_token()}")
        where[("comment", mi)] = len(lines)

    lines.append("@End")
    return lines, where


def canonical_lines(doc: ChatDocument) -> list[str]:
    """The canonical text as a list of lines (no terminators)."""
    return numbered_lines(doc)[0]


def serialize_chat(doc: ChatDocument) -> str:
    """Canonical plain-text CHAT, LF-terminated including the final line."""
    return "\n".join(canonical_lines(doc)) + "\n"
