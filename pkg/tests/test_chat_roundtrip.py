"""Round-trip and canonicality properties of the transcript grammar."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from slakit.chat import parse_chat, serialize_chat, validate

from genchat import random_document

SPEC_MINIMAL = "@Begin\n@Participants:\tROD Rodney Analyst\n*ROD:\tso we agree .\n@End\n"


def test_canonical_text_is_fixpoint():
    assert serialize_chat(parse_chat(SPEC_MINIMAL)) == SPEC_MINIMAL


def test_span_serializes_as_tim_tier():
    from slakit.chat import ChatDocument, Participant, append_utterance
    from slakit.timebase import TimeSpan

    doc = ChatDocument.new([Participant("ROD", "Rodney", "Analyst")])
    doc = append_utterance(doc, "ROD", "noted", ".", span=TimeSpan(0, 2500))
    text = serialize_chat(doc)
    assert "%tim:\t0_2500" in text
    assert parse_chat(text) == doc


def test_two_episodes_marked_by_new_episode():
    from slakit.chat import ChatDocument, Participant, append_utterance, new_episode

    doc = ChatDocument.new([Participant("ROD", "Rodney", "Analyst")])
    doc = append_utterance(doc, "ROD", "first", ".")
    doc = new_episode(doc)
    lines = serialize_chat(doc).splitlines()
    assert "@New Episode" in lines
    assert parse_chat(serialize_chat(doc)) == doc


def test_random_documents_round_trip():
    rng = random.Random(20040601)
    for _ in range(200):
        doc = random_document(rng)
        assert validate(doc) == []
        text = serialize_chat(doc)
        again = parse_chat(text)
        assert again == doc
        assert serialize_chat(again) == text


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_round_trip_property(seed):
    doc = random_document(random.Random(seed))
    text = serialize_chat(doc)
    assert parse_chat(text) == doc
    assert serialize_chat(parse_chat(text)) == text


def test_non_canonical_input_stabilizes_after_one_pass():
    messy = (
        "@Begin\r\n"
        "@Participants:   ROD   Rodney   Analyst\r\n"
        "\r\n"
        "*ROD: so we\n"
        "\tagree .\n"
        "%com:  with emphasis\n"
        "@End\n"
    )
    once = serialize_chat(parse_chat(messy))
    assert serialize_chat(parse_chat(once)) == once
