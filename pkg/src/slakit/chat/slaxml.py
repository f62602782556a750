"""Occasion XML: the representation shared by indexing and transcription.

``to_sla_xml`` and ``from_sla_xml`` are exact inverses for valid documents.
The schema is normative (docs/sla-xml.xsd in the repository): root
``occasion`` holding ``participants``, optional ``headers``, ``episode``
elements with ``utterance`` children (``text``/``tier``/``index``), and
trailing timed ``comment`` elements. Time alignment rides as start/end
attributes; index tiers become structured ``index`` elements.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from slakit.chat.diagnostics import Diagnostic, SlaXmlError, error
from slakit.chat.model import (
    ChatDocument,
    DependentTier,
    Episode,
    Header,
    INDEX_TIER_CODE,
    INDEX_TIER_RE,
    Participant,
    TimedComment,
    Utterance,
)
from slakit.chat.validator import has_errors, validate
from slakit.timebase import TimeSpan

TERM_TO_WORD = {".": "period", "?": "question", "!": "exclamation"}
WORD_TO_TERM = {w: t for t, w in TERM_TO_WORD.items()}

_PARTICIPANT_ATTRS = ("birth", "age", "ses", "sex")
_NETWORK_ID_RE = re.compile(r"^[A-Za-z0-9_-]+$")


def index_tier_parts(content: str) -> tuple[str, int, str, TimeSpan]:
    """Split %ind content into (network, version, pairs-text, span)."""
    m = INDEX_TIER_RE.match(content)
    if not m:
        raise ValueError(f"not an index tier: {content!r}")
    return (
        m.group("network"),
        int(m.group("version")),
        m.group("pairs").strip(),
        TimeSpan(int(m.group("start")), int(m.group("end"))),
    )


def to_sla_xml(
    doc: ChatDocument, occasion_id: str | None = None, title: str | None = None
) -> str:
    """Serialize a valid document to occasion XML (deterministic text).

    ``occasion_id`` and ``title`` are store-level metadata carried as root
    attributes; they are not part of the document value and are ignored by
    ``from_sla_xml``.
    """
    root = ET.Element("occasion")
    if occasion_id is not None:
        root.set("id", occasion_id)
    if title is not None:
        root.set("title", title)

    participants = ET.SubElement(root, "participants")
    for part in doc.participants:
        el = ET.SubElement(participants, "participant")
        el.set("code", part.code)
        el.set("name", part.name)
        el.set("role", part.role)
        for attr in _PARTICIPANT_ATTRS:
            value = getattr(part, attr)
            if value is not None:
                el.set(attr, value)

    headers = ET.SubElement(root, "headers")
    for header in doc.constant_headers:
        el = ET.SubElement(headers, "header")
        el.set("kind", header.kind)
        el.text = header.value

    for episode in doc.episodes:
        ep_el = ET.SubElement(root, "episode")
        for header in episode.headers:
            el = ET.SubElement(ep_el, "header")
            el.set("kind", header.kind)
            el.text = header.value
        for utt in episode.utterances:
            u_el = ET.SubElement(ep_el, "utterance")
            u_el.set("speaker", utt.speaker)
            u_el.set("terminator", TERM_TO_WORD.get(utt.terminator, utt.terminator))
            if utt.span is not None:
                u_el.set("start", str(utt.span.start_ms))
                u_el.set("end", str(utt.span.end_ms))
            text_el = ET.SubElement(u_el, "text")
            text_el.text = utt.text
            for tier in utt.tiers:
                if tier.code == INDEX_TIER_CODE:
                    network, version, pairs, span = index_tier_parts(tier.content)
                    i_el = ET.SubElement(u_el, "index")
                    i_el.set("network", network)
                    i_el.set("version", str(version))
                    i_el.set("span", span.as_token())
                    i_el.text = pairs
                else:
                    t_el = ET.SubElement(u_el, "tier")
                    t_el.set("code", tier.code)
                    t_el.text = tier.content

    for comment in doc.trailing_comments:
        c_el = ET.SubElement(root, "comment")
        c_el.set("start", str(comment.span.start_ms))
        c_el.set("end", str(comment.span.end_ms))
        c_el.text = comment.body

    tree = ET.ElementTree(root)
    ET.indent(tree, space="  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(
        root, encoding="unicode"
    ) + "\n"


class _SchemaCheck:
    """Structural walk of occasion XML, mirroring docs/sla-xml.xsd."""

    def __init__(self) -> None:
        self.diags: list[Diagnostic] = []

    def fail(self, message: str) -> None:
        self.diags.append(error("E011", 0, message))

    def check(self, root: ET.Element) -> None:
        if root.tag != "occasion":
            self.fail(f"root element must be <occasion>, got <{root.tag}>")
            return
        allowed = {"participants", "headers", "episode", "comment"}
        for child in root:
            if child.tag not in allowed:
                self.fail(f"<occasion> may not contain <{child.tag}>")
        p_els = root.findall("participants")
        if len(p_els) != 1:
            self.fail(f"<occasion> needs exactly one <participants>, found {len(p_els)}")
        else:
            self.check_participants(p_els[0])
        if len(root.findall("headers")) > 1:
            self.fail("<occasion> allows at most one <headers>")
        for headers in root.findall("headers"):
            for el in headers:
                if el.tag != "header":
                    self.fail(f"<headers> may not contain <{el.tag}>")
                elif "kind" not in el.attrib:
                    self.fail("<header> requires a kind attribute")
        for ep in root.findall("episode"):
            self.check_episode(ep)
        for c_el in root.findall("comment"):
            self.span_of(c_el, "<comment>", required=True)
            if not (c_el.text or "").strip():
                self.fail("<comment> requires body text")

    def check_participants(self, el: ET.Element) -> None:
        for child in el:
            if child.tag != "participant":
                self.fail(f"<participants> may not contain <{child.tag}>")
                continue
            for required in ("code", "name", "role"):
                if required not in child.attrib:
                    self.fail(f"<participant> requires a {required} attribute")

    def check_episode(self, ep: ET.Element) -> None:
        for child in ep:
            if child.tag == "header":
                if "kind" not in child.attrib:
                    self.fail("<header> requires a kind attribute")
            elif child.tag == "utterance":
                self.check_utterance(child)
            else:
                self.fail(f"<episode> may not contain <{child.tag}>")

    def check_utterance(self, u_el: ET.Element) -> None:
        if "speaker" not in u_el.attrib:
            self.fail("<utterance> requires a speaker attribute")
        term = u_el.get("terminator")
        if term not in WORD_TO_TERM:
            self.fail(f"<utterance> terminator must be period/question/exclamation, got {term!r}")
        self.span_of(u_el, "<utterance>", required=False)
        texts = u_el.findall("text")
        if len(texts) != 1:
            self.fail(f"<utterance> needs exactly one <text>, found {len(texts)}")
        for child in u_el:
            if child.tag == "text":
                continue
            if child.tag == "tier":
                if "code" not in child.attrib:
                    self.fail("<tier> requires a code attribute")
            elif child.tag == "index":
                self.check_index(child)
            else:
                self.fail(f"<utterance> may not contain <{child.tag}>")

    def check_index(self, el: ET.Element) -> None:
        network = el.get("network", "")
        version = el.get("version", "")
        span = el.get("span", "")
        pairs = (el.text or "").strip()
        if not _NETWORK_ID_RE.match(network):
            self.fail(f"<index> network attribute malformed: {network!r}")
            return
        if not version.isdigit() or int(version) < 1:
            self.fail(f"<index> version attribute malformed: {version!r}")
            return
        content = f"{network}:v{version} {pairs} {span}"
        if not INDEX_TIER_RE.match(content):
            self.fail(f"<index> does not reassemble to the index grammar: {content!r}")

    def span_of(self, el: ET.Element, what: str, required: bool) -> TimeSpan | None:
        start, end = el.get("start"), el.get("end")
        if start is None and end is None:
            if required:
                self.fail(f"{what} requires start and end attributes")
            return None
        if start is None or end is None:
            self.fail(f"{what} needs both start and end, or neither")
            return None
        if not (start.isdigit() and end.isdigit()):
            self.fail(f"{what} start/end must be non-negative integers")
            return None
        try:
            return TimeSpan(int(start), int(end))
        except ValueError as exc:
            self.fail(f"{what} span invalid: {exc}")
            return None


def from_sla_xml(xml: str | bytes) -> ChatDocument:
    """Parse occasion XML back into a document.

    Raises SlaXmlError with E010 for non-XML input, E011 for schema
    violations, and the underlying rule codes when the XML is schematically
    fine but describes an invalid document (e.g. an undeclared speaker).
    """
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        raise SlaXmlError([error("E010", 0, f"malformed XML: {exc}")]) from exc

    checker = _SchemaCheck()
    checker.check(root)
    if checker.diags:
        raise SlaXmlError(checker.diags)

    p_root = root.find("participants")
    participants = tuple(
        Participant(
            code=el.get("code", ""),
            name=el.get("name", ""),
            role=el.get("role", ""),
            birth=el.get("birth"),
            age=el.get("age"),
            ses=el.get("ses"),
            sex=el.get("sex"),
        )
        for el in (p_root if p_root is not None else ())
    )
    headers_el = root.find("headers")
    constant_headers = tuple(
        Header(kind=el.get("kind", ""), value=el.text or "")
        for el in (headers_el if headers_el is not None else [])
    )

    episodes = []
    for ep_el in root.findall("episode"):
        ep_headers: list[Header] = []
        utterances: list[Utterance] = []
        for child in ep_el:
            if child.tag == "header":
                ep_headers.append(Header(kind=child.get("kind", ""), value=child.text or ""))
            elif child.tag == "utterance":
                span = None
                if child.get("start") is not None:
                    span = TimeSpan(int(child.get("start")), int(child.get("end")))
                tiers: list[DependentTier] = []
                text = ""
                for sub in child:
                    if sub.tag == "text":
                        text = sub.text or ""
                    elif sub.tag == "tier":
                        tiers.append(
                            DependentTier(code=sub.get("code", ""), content=sub.text or "")
                        )
                    elif sub.tag == "index":
                        content = "{}:v{} {} {}".format(
                            sub.get("network"),
                            sub.get("version"),
                            (sub.text or "").strip(),
                            sub.get("span"),
                        )
                        tiers.append(DependentTier(code=INDEX_TIER_CODE, content=content))
                utterances.append(
                    Utterance(
                        speaker=child.get("speaker", ""),
                        text=text,
                        terminator=WORD_TO_TERM[child.get("terminator", "")],
                        span=span,
                        tiers=tuple(tiers),
                    )
                )
        episodes.append(Episode(headers=tuple(ep_headers), utterances=tuple(utterances)))

    comments = tuple(
        TimedComment(
            span=TimeSpan(int(el.get("start")), int(el.get("end"))),
            body=(el.text or "").strip(),
        )
        for el in root.findall("comment")
    )

    doc = ChatDocument(
        participants=participants,
        constant_headers=constant_headers,
        episodes=tuple(episodes) if episodes else (Episode(),),
        trailing_comments=comments,
    )
    findings = validate(doc)
    if has_errors(findings):
        raise SlaXmlError([d for d in findings if d.is_error])
    return doc
