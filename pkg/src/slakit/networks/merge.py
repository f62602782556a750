"""Folding index events into a transcript.

Each event lands as an ``%ind`` tier on every utterance whose span overlaps
the event span; events touching no utterance become standalone timed
comments so nothing is ever dropped. Merging is idempotent.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable

from slakit.chat.model import ChatDocument, DependentTier, INDEX_TIER_CODE, TimedComment
from slakit.networks.model import IndexEvent


def selection_pairs_text(event: IndexEvent) -> str:
    """``SYS=opt`` pairs in lexicographic system order (deterministic wire form)."""
    return " ".join(f"{s}={o}" for s, o in sorted(event.selection.choices))


def index_tier_content(event: IndexEvent) -> str:
    """The %ind grammar: ``NETID:vN SYS=opt[ SYS=opt]* start_end``."""
    return (
        f"{event.network_id}:v{event.network_version} "
        f"{selection_pairs_text(event)} {event.span.as_token()}"
    )


def merge_events_into_transcript(
    doc: ChatDocument, events: Iterable[IndexEvent]
) -> ChatDocument:
    """Attach events as %ind tiers by span overlap; orphans become comments.

    Events with an empty selection have no tier representation and always
    land in the comment block. The result validates clean whenever the input
    did, and re-merging the same events changes nothing.
    """
    ordered = sorted(
        events, key=lambda e: (e.span.start_ms, e.span.end_ms, e.event_id)
    )
    for event in ordered:
        matched = False
        if len(event.selection):
            content = index_tier_content(event)
            for n, _, utt in doc.iter_utterances():
                if utt.span is not None and utt.span.overlaps(event.span):
                    matched = True
                    if any(
                        t.code == INDEX_TIER_CODE and t.content == content
                        for t in utt.tiers
                    ):
                        continue
                    tier = DependentTier(code=INDEX_TIER_CODE, content=content)
                    doc = doc.replace_utterance(n, replace(utt, tiers=utt.tiers + (tier,)))
        if not matched:
            body = f"{event.network_id}:v{event.network_version}"
            pairs = selection_pairs_text(event)
            if pairs:
                body = f"{body} {pairs}"
            comment = TimedComment(span=event.span, body=body)
            if comment not in doc.trailing_comments:
                doc = replace(doc, trailing_comments=doc.trailing_comments + (comment,))
    return doc
