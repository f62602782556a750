"""CHAT transcript core: model, parser, serializer, validator, edits, views.

The grammar is line-oriented UTF-8: header lines start with ``@``, mainlines
with ``*`` plus a three-character participant code, dependent tiers with ``%``
plus a three-character lowercase code. The serializer emits one canonical
form (TAB after the record colon, LF endings, ``@Begin``/``@End`` frame) and
``parse_chat`` inverts it exactly.
"""

from slakit.timebase import TimeSpan
from slakit.chat.diagnostics import (
    Diagnostic,
    ChatError,
    ChatParseError,
    ChatEditError,
    SlaXmlError,
    FilterError,
    SEVERITY_ERROR,
    SEVERITY_WARNING,
)
from slakit.chat.model import (
    ChatDocument,
    DependentTier,
    Episode,
    Header,
    Participant,
    TimedComment,
    Utterance,
    CHANGEABLE_HEADER_KINDS,
    TERMINATORS,
)
from slakit.chat.parser import parse_chat
from slakit.chat.serializer import serialize_chat, canonical_lines
from slakit.chat.validator import validate
from slakit.chat.edits import append_utterance, attach_tier, new_episode
from slakit.chat.view import TranscriptView, filter_view
from slakit.chat.slaxml import to_sla_xml, from_sla_xml

__all__ = [
    "TimeSpan",
    "Diagnostic",
    "ChatError",
    "ChatParseError",
    "ChatEditError",
    "SlaXmlError",
    "FilterError",
    "SEVERITY_ERROR",
    "SEVERITY_WARNING",
    "ChatDocument",
    "DependentTier",
    "Episode",
    "Header",
    "Participant",
    "TimedComment",
    "Utterance",
    "CHANGEABLE_HEADER_KINDS",
    "TERMINATORS",
    "parse_chat",
    "serialize_chat",
    "canonical_lines",
    "validate",
    "append_utterance",
    "attach_tier",
    "new_episode",
    "TranscriptView",
    "filter_view",
    "to_sla_xml",
    "from_sla_xml",
]
