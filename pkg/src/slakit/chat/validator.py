"""Rule table enforcement over the transcript model.

``validate`` reports against canonical line numbers (what ``serialize_chat``
would emit); the parser reuses ``check_document`` with real input lines. A
document is *valid* when the result contains no error-severity diagnostics;
valid documents round-trip byte-exactly through the serializer.
"""

from __future__ import annotations

import re

from slakit.chat.diagnostics import Diagnostic, error, sort_diagnostics, warning
from slakit.chat.model import (
    CHANGEABLE_HEADER_KINDS,
    ChatDocument,
    INDEX_TIER_CODE,
    INDEX_TIER_RE,
    PARTICIPANT_CODE_RE,
    TERMINATORS,
    TIER_CODE_RE,
    TIME_TIER_CODE,
    canonical_text,
)
from slakit.chat.serializer import Location, numbered_lines

#: custom constant header kinds: word-ish, may contain internal single spaces
CONSTANT_KIND_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*(?: [A-Za-z0-9]+)*$")

#: kinds a stored Header may never use (structural or positional meanings)
RESERVED_HEADER_KINDS = frozenset(
    {"Begin", "End", "New Episode", "Participants", "Comment"}
)
_OF_KIND_RE = re.compile(r"^(Birth|Age|SES|Sex) of ")

_TOKEN_RE = re.compile(r"^\S+$")


def _bad_value(value: str) -> bool:
    return "\n" in value or "\r" in value


def validate(doc: ChatDocument) -> list[Diagnostic]:
    """All rule findings for the document, deterministically ordered."""
    _, where = numbered_lines(doc)
    return check_document(doc, where)


def check_document(
    doc: ChatDocument,
    where: dict[Location, int],
    participants_header_present: bool = True,
) -> list[Diagnostic]:
    """Semantic rule sweep shared by validate() and the parser.

    ``where`` maps structural record paths (see serializer.numbered_lines) to
    line numbers; records with no entry report line 0.
    """
    diags: list[Diagnostic] = []
    line = lambda key: where.get(key, 0)

    p_line = line(("participants",))
    if participants_header_present and not doc.participants:
        diags.append(error("E002", p_line, "@Participants declares no participants"))

    seen_codes: set[str] = set()
    for pi, part in enumerate(doc.participants):
        if not PARTICIPANT_CODE_RE.match(part.code):
            diags.append(
                error("E007", p_line, f"participant code {part.code!r} is not 3 chars A-Z0-9")
            )
        elif part.code in seen_codes:
            diags.append(error("E007", p_line, f"duplicate participant code {part.code}"))
        seen_codes.add(part.code)
        for label, value in (("name", part.name), ("role", part.role)):
            if not _TOKEN_RE.match(value or ""):
                diags.append(
                    error(
                        "E007",
                        p_line,
                        f"participant {part.code} {label} must be a single token, got {value!r}",
                    )
                )
        for kind, value in zip(("Birth", "Age", "SES", "Sex"), (part.birth, part.age, part.ses, part.sex)):
            if value is not None and (_bad_value(value) or not value):
                diags.append(
                    error("E007", line(("pheader", pi, kind)), f"bad @{kind} value for {part.code}")
                )

    for ci, header in enumerate(doc.constant_headers):
        hline = line(("constant", ci))
        if (
            not CONSTANT_KIND_RE.match(header.kind)
            or header.kind in RESERVED_HEADER_KINDS
            or header.kind in CHANGEABLE_HEADER_KINDS
            or _OF_KIND_RE.match(header.kind)
        ):
            diags.append(error("E007", hline, f"illegal constant header kind {header.kind!r}"))
        if _bad_value(header.value):
            diags.append(error("E007", hline, f"header @{header.kind} value contains line breaks"))

    declared = {p.code for p in doc.participants}
    prev_start: int | None = None
    n = 0
    for ei, episode in enumerate(doc.episodes):
        for hi, header in enumerate(episode.headers):
            hline = line(("eheader", ei, hi))
            if header.kind not in CHANGEABLE_HEADER_KINDS:
                diags.append(
                    error("E007", hline, f"{header.kind!r} is not a changeable header kind")
                )
            if _bad_value(header.value):
                diags.append(error("E007", hline, f"header @{header.kind} value contains line breaks"))
        for utt in episode.utterances:
            uline = line(("utterance", n))
            if doc.participants and utt.speaker not in declared:
                diags.append(error("E003", uline, f"speaker {utt.speaker!r} is not declared"))
            if utt.terminator not in TERMINATORS:
                diags.append(
                    error("E005", uline, f"utterance must end with one of . ? !, got {utt.terminator!r}")
                )
            if utt.text != canonical_text(utt.text):
                diags.append(error("E005", uline, "utterance text is not whitespace-canonical"))
            elif any(tok in TERMINATORS for tok in utt.text.split()):
                diags.append(error("E005", uline, "utterance text contains a second terminator"))
            if utt.span is not None:
                if prev_start is not None and utt.span.start_ms < prev_start:
                    diags.append(
                        warning(
                            "W008",
                            uline,
                            f"span starts at {utt.span.start_ms} before predecessor at {prev_start}",
                        )
                    )
                prev_start = utt.span.start_ms
            for ti, tier in enumerate(utt.tiers):
                tline = line(("tier", n, ti))
                if not TIER_CODE_RE.match(tier.code):
                    diags.append(
                        error("E004", tline, f"tier code {tier.code!r} is not 3 chars a-z")
                    )
                elif tier.code == TIME_TIER_CODE:
                    diags.append(
                        error("E004", tline, "%tim is reserved for time alignment spans")
                    )
                elif tier.code == INDEX_TIER_CODE and not INDEX_TIER_RE.match(tier.content):
                    diags.append(
                        error("E004", tline, f"%ind content does not match the index grammar: {tier.content!r}")
                    )
                if _bad_value(tier.content):
                    diags.append(error("E004", tline, f"%{tier.code} content contains line breaks"))
            n += 1

    for mi, comment in enumerate(doc.trailing_comments):
        cline = line(("comment", mi))
        if not comment.body or _bad_value(comment.body):
            diags.append(error("E007", cline, "timed comment body must be one non-empty line"))

    return sort_diagnostics(diags)


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.is_error for d in diags)
