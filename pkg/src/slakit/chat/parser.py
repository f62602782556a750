"""Plain-text CHAT parsing.

Lenient on input (CRLF, space after the record colon, TAB-continuation
lines, blank lines), strict on outcome: the result either satisfies every
model invariant or the call fails with all collected error diagnostics.
Arbitrary bytes never raise anything but ChatParseError.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from slakit.chat.diagnostics import (
    ChatParseError,
    Diagnostic,
    error,
    sort_diagnostics,
)
from slakit.chat.model import (
    CHANGEABLE_HEADER_KINDS,
    ChatDocument,
    DependentTier,
    Episode,
    Header,
    Participant,
    TERMINATORS,
    TIME_TIER_CODE,
    TimedComment,
    Utterance,
)
from slakit.chat.serializer import Location
from slakit.chat.validator import check_document, has_errors
from slakit.timebase import TimeSpan

_MAINLINE_RE = re.compile(r"^\*([^:]*):(.*)$", re.DOTALL)
_TIER_RE = re.compile(r"^%([^:]*):(.*)$", re.DOTALL)
_OF_HEADER_RE = re.compile(r"^(Birth|Age|SES|Sex) of (.+)$")
_TIM_CONTENT_RE = re.compile(r"^[0-9]+_[0-9]+$")


@dataclass
class _Part:
    code: str
    name: str
    role: str
    attrs: dict[str, str] = field(default_factory=dict)
    attr_lines: dict[str, int] = field(default_factory=dict)

    def freeze(self) -> Participant:
        return Participant(
            code=self.code,
            name=self.name,
            role=self.role,
            birth=self.attrs.get("Birth"),
            age=self.attrs.get("Age"),
            ses=self.attrs.get("SES"),
            sex=self.attrs.get("Sex"),
        )


@dataclass
class _Utt:
    speaker: str
    text: str
    terminator: str
    line: int
    span: TimeSpan | None = None
    tiers: list[tuple[DependentTier, int]] = field(default_factory=list)

    def freeze(self) -> Utterance:
        return Utterance(
            speaker=self.speaker,
            text=self.text,
            terminator=self.terminator,
            span=self.span,
            tiers=tuple(t for t, _ in self.tiers),
        )


@dataclass
class _Episode:
    headers: list[tuple[Header, int]] = field(default_factory=list)
    utterances: list[_Utt] = field(default_factory=list)

    def freeze(self) -> Episode:
        return Episode(
            headers=tuple(h for h, _ in self.headers),
            utterances=tuple(u.freeze() for u in self.utterances),
        )


def _logical_records(text: str) -> list[tuple[int, str]]:
    """Join TAB-continuation lines onto their record; drop blank lines."""
    records: list[tuple[int, str]] = []
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("\t") and records:
            prev_no, prev = records[-1]
            records[-1] = (prev_no, prev + " " + line.strip())
        else:
            records.append((no, line))
    return records


def _value_after_colon(rest: str) -> str:
    """Record value: canonical form has one TAB; spaces tolerated on input."""
    if rest.startswith("\t"):
        return rest[1:]
    return rest.lstrip(" ")


class _Parser:
    def __init__(self) -> None:
        self.diags: list[Diagnostic] = []
        self.participants: list[_Part] = []
        self.p_index: dict[str, int] = {}
        self.p_header_line = 0
        self.p_header_seen = False
        self.constants: list[tuple[Header, int]] = []
        self.episodes: list[_Episode] = [_Episode()]
        self.comments: list[tuple[TimedComment, int]] = []
        self.begin_seen = False
        self.end_seen = False
        self.in_body = False
        self.in_trailing = False
        self.after_end_reported = False

    def err(self, code: str, line: int, message: str) -> None:
        self.diags.append(error(code, line, message))

    # -- record dispatch ---------------------------------------------------

    def feed(self, no: int, record: str) -> None:
        if self.end_seen:
            if not self.after_end_reported:
                self.err("E007", no, "content after @End")
                self.after_end_reported = True
            return
        if record.startswith("@"):
            self.header(no, record)
        elif record.startswith("*"):
            self.mainline(no, record)
        elif record.startswith("%"):
            self.tier(no, record)
        else:
            self.err("E007", no, f"unrecognized record: {record[:40]!r}")

    def header(self, no: int, record: str) -> None:
        if record == "@Begin":
            if self.begin_seen:
                self.err("E007", no, "duplicate @Begin")
            elif self.in_body or self.constants or self.p_header_seen:
                self.err("E007", no, "@Begin must be the first record")
            self.begin_seen = True
            return
        if record == "@End":
            self.end_seen = True
            return
        if record == "@New Episode":
            if self.in_trailing:
                self.err("E007", no, "@New Episode after the trailing comment block")
                return
            self.in_body = True
            self.episodes.append(_Episode())
            return
        kind, sep, rest = record[1:].partition(":")
        if not sep:
            self.err("E007", no, f"header without colon: {record[:40]!r}")
            return
        value = _value_after_colon(rest)
        if kind == "New Episode":
            self.err("E007", no, "@New Episode takes no value")
            return
        if kind == "Comment":
            self.comment(no, value)
            return
        if self.in_trailing:
            self.err("E007", no, f"only @Comment may follow the comment block, got @{kind}")
            return
        if kind == "Participants":
            self.participants_header(no, value)
            return
        of = _OF_HEADER_RE.match(kind)
        if of:
            self.attribute_header(no, of.group(1), of.group(2), value)
            return
        if kind in CHANGEABLE_HEADER_KINDS:
            self.in_body = True
            episode = self.episodes[-1]
            if episode.utterances:
                self.err("E007", no, f"@{kind} must precede the episode's utterances")
                return
            episode.headers.append((Header(kind, value), no))
            return
        if self.in_body:
            self.err("E007", no, f"@{kind} is not a changeable header")
            return
        self.constants.append((Header(kind, value), no))

    def participants_header(self, no: int, value: str) -> None:
        if self.in_body:
            self.err("E007", no, "@Participants must precede the transcript body")
            return
        if self.p_header_seen:
            self.err("E007", no, "duplicate @Participants header")
            return
        self.p_header_seen = True
        self.p_header_line = no
        if not value.strip():
            return
        for entry in value.split(","):
            tokens = entry.split()
            if len(tokens) != 3:
                self.err(
                    "E007", no, f"participant entry must be 'CODE Name Role', got {entry.strip()!r}"
                )
                continue
            code, name, role = tokens
            if code in self.p_index:
                self.err("E007", no, f"duplicate participant code {code}")
                continue
            self.p_index[code] = len(self.participants)
            self.participants.append(_Part(code=code, name=name, role=role))

    def attribute_header(self, no: int, kind: str, code: str, value: str) -> None:
        if self.in_body:
            self.err("E007", no, f"@{kind} of {code} must precede the transcript body")
            return
        pi = self.p_index.get(code)
        if pi is None:
            self.err("E007", no, f"@{kind} of {code}: participant {code} not declared")
            return
        part = self.participants[pi]
        if kind in part.attrs:
            self.err("E007", no, f"duplicate @{kind} of {code}")
            return
        part.attrs[kind] = value
        part.attr_lines[kind] = no

    def comment(self, no: int, value: str) -> None:
        self.in_trailing = True
        self.in_body = True
        body, sep, token = value.rpartition(" ")
        try:
            span = TimeSpan.from_token(token)
        except ValueError:
            self.err("E007", no, f"@Comment must end with a start_end span, got {value!r}")
            return
        if not sep or not body:
            self.err("E007", no, "@Comment needs a body before the span")
            return
        self.comments.append((TimedComment(span=span, body=body), no))

    def mainline(self, no: int, record: str) -> None:
        if self.in_trailing:
            self.err("E007", no, "mainline after the trailing comment block")
            return
        m = _MAINLINE_RE.match(record)
        if not m:
            self.err("E007", no, f"mainline without colon: {record[:40]!r}")
            return
        self.in_body = True
        tokens = _value_after_colon(m.group(2)).split()
        if tokens and tokens[-1] in TERMINATORS:
            terminator = tokens[-1]
            words = tokens[:-1]
        else:
            terminator = ""
            words = tokens
        self.episodes[-1].utterances.append(
            _Utt(speaker=m.group(1), text=" ".join(words), terminator=terminator, line=no)
        )

    def tier(self, no: int, record: str) -> None:
        if self.in_trailing:
            self.err("E007", no, "tier after the trailing comment block")
            return
        m = _TIER_RE.match(record)
        if not m:
            self.err("E007", no, f"tier without colon: {record[:40]!r}")
            return
        code = m.group(1)
        content = _value_after_colon(m.group(2))
        episode = self.episodes[-1]
        if not episode.utterances:
            self.err("E006", no, f"%{code} tier has no preceding mainline")
            return
        utt = episode.utterances[-1]
        if code == TIME_TIER_CODE:
            if not _TIM_CONTENT_RE.match(content):
                self.err("E004", no, f"%tim content must be start_end integers, got {content!r}")
            elif utt.span is not None:
                self.err("E004", no, "duplicate %tim tier for one mainline")
            else:
                try:
                    utt.span = TimeSpan.from_token(content)
                except ValueError:
                    self.err("E008", no, f"invalid time span {content}")
            return
        utt.tiers.append((DependentTier(code=code, content=content), no))

    # -- assembly ----------------------------------------------------------

    def finish(self, last_line: int) -> tuple[ChatDocument, dict[Location, int]]:
        if not self.begin_seen:
            self.err("E001", 1, "transcript must start with @Begin")
        if not self.end_seen:
            self.err("E007", last_line, "missing @End")
        if not self.p_header_seen:
            self.err("E002", 0, "missing @Participants header")

        where: dict[Location, int] = {("participants",): self.p_header_line}
        for pi, part in enumerate(self.participants):
            for kind, no in part.attr_lines.items():
                where[("pheader", pi, kind)] = no
        for ci, (_, no) in enumerate(self.constants):
            where[("constant", ci)] = no
        n = 0
        for ei, ep in enumerate(self.episodes):
            for hi, (_, no) in enumerate(ep.headers):
                where[("eheader", ei, hi)] = no
            for u in ep.utterances:
                where[("utterance", n)] = u.line
                for ti, (_, no) in enumerate(u.tiers):
                    where[("tier", n, ti)] = no
                n += 1
        for mi, (_, no) in enumerate(self.comments):
            where[("comment", mi)] = no

        doc = ChatDocument(
            participants=tuple(p.freeze() for p in self.participants),
            constant_headers=tuple(h for h, _ in self.constants),
            episodes=tuple(ep.freeze() for ep in self.episodes),
            trailing_comments=tuple(c for c, _ in self.comments),
        )
        return doc, where


def parse_chat(text: str | bytes) -> ChatDocument:
    """Parse plain-text CHAT; raises ChatParseError on any rule violation.

    The returned document always satisfies every model invariant. Warning
    findings (e.g. non-monotonic spans) do not block parsing and remain
    available through ``validate``.
    """
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    records = _logical_records(text)

    parser = _Parser()
    for no, record in records:
        parser.feed(no, record)
    doc, where = parser.finish(records[-1][0] if records else 1)

    diags = parser.diags + check_document(
        doc, where, participants_header_present=parser.p_header_seen
    )
    diags = sort_diagnostics(diags)
    if has_errors(diags):
        raise ChatParseError([d for d in diags if d.is_error])
    return doc
