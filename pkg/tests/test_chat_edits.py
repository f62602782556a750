"""Editing operations: validation, persistence, and the closure property."""

import random

import pytest

from slakit.chat import (
    ChatDocument,
    ChatEditError,
    Header,
    Participant,
    append_utterance,
    attach_tier,
    new_episode,
    parse_chat,
    serialize_chat,
    validate,
)
from slakit.timebase import TimeSpan

from genchat import random_participants


@pytest.fixture
def doc():
    return ChatDocument.new(
        [Participant("ROD", "Rodney", "Analyst"), Participant("DAL", "Dali", "Analyst")]
    )


def test_append_increments_count(doc):
    out = append_utterance(doc, "ROD", "fine", ".")
    assert out.utterance_count == doc.utterance_count + 1
    assert doc.utterance_count == 0  # input untouched


def test_append_unknown_speaker(doc):
    with pytest.raises(ChatEditError) as exc:
        append_utterance(doc, "XYZ", "hi", ".")
    assert exc.value.codes == ["E003"]


def test_append_bad_terminator(doc):
    with pytest.raises(ChatEditError) as exc:
        append_utterance(doc, "ROD", "hi", ";")
    assert exc.value.codes == ["E005"]


def test_append_with_span_serializes_tim(doc):
    out = append_utterance(doc, "ROD", "why", "?", span=TimeSpan(1000, 2000))
    assert "%tim:\t1000_2000" in serialize_chat(out)
    assert parse_chat(serialize_chat(out)) == out


def test_append_backwards_span_succeeds_with_warning(doc):
    out = append_utterance(doc, "ROD", "one", ".", span=TimeSpan(5000, 6000))
    out = append_utterance(out, "DAL", "two", ".", span=TimeSpan(0, 900))
    findings = validate(out)
    assert [d.code for d in findings] == ["W008"]
    assert not any(d.is_error for d in findings)


def test_attach_tier(doc):
    out = append_utterance(doc, "ROD", "fine", ".")
    out = attach_tier(out, 0, "com", "laughter")
    assert out.utterance_at(0).tiers[0].content == "laughter"


def test_attach_tier_uppercase_code_rejected(doc):
    out = append_utterance(doc, "ROD", "fine", ".")
    with pytest.raises(ChatEditError) as exc:
        attach_tier(out, 0, "COM", "x")
    assert exc.value.codes == ["E004"]


def test_attach_tier_index_out_of_range(doc):
    out = append_utterance(doc, "ROD", "fine", ".")
    with pytest.raises(ChatEditError) as exc:
        attach_tier(out, 7, "com", "x")
    assert exc.value.codes == ["E009"]


def test_new_episode_with_headers(doc):
    out = new_episode(doc, [Header("Situation", "kickoff meeting")])
    assert len(out.episodes) == 2
    assert "@Situation:\tkickoff meeting" in serialize_chat(out)


def test_new_episode_bare(doc):
    out = new_episode(doc, [])
    assert serialize_chat(out).splitlines()[-2] == "@New Episode"


def test_new_episode_rejects_constant_kinds(doc):
    with pytest.raises(ChatEditError) as exc:
        new_episode(doc, [Header("Media", "x")])
    assert exc.value.codes == ["E007"]


def random_edit(rng: random.Random, doc: ChatDocument, cursor: int) -> tuple[ChatDocument, int]:
    """One random successful edit; spans advance monotonically."""
    op = rng.random()
    codes = [p.code for p in doc.participants]
    if op < 0.6 or doc.utterance_count == 0:
        span = None
        if rng.random() < 0.5:
            start = cursor + rng.randint(0, 300)
            span = TimeSpan(start, start + rng.randint(1, 2000))
            cursor = start
        doc = append_utterance(
            doc,
            rng.choice(codes),
            " ".join(rng.choice(["so", "ok", "next", "issue", "done"]) for _ in range(rng.randint(0, 5))),
            rng.choice([".", "?", "!"]),
            span=span,
        )
    elif op < 0.85:
        doc = attach_tier(
            doc, rng.randrange(doc.utterance_count), rng.choice(["com", "act", "gap"]), "noted"
        )
    else:
        doc = new_episode(
            doc, [Header(rng.choice(["Situation", "Date"]), "x")] if rng.random() < 0.5 else []
        )
    return doc, cursor


def test_editing_closure_smoke():
    rng = random.Random(77)
    for _ in range(300):
        doc = ChatDocument.new(random_participants(rng))
        cursor = 0
        for _ in range(rng.randint(1, 12)):
            doc, cursor = random_edit(rng, doc, cursor)
        assert validate(doc) == []
        assert parse_chat(serialize_chat(doc)) == doc


def test_edits_never_mutate_input(doc):
    before = serialize_chat(doc)
    out = append_utterance(doc, "ROD", "x", ".")
    out = attach_tier(out, 0, "com", "y")
    new_episode(out, [])
    assert serialize_chat(doc) == before
