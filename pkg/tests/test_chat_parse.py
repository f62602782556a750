"""Parser behaviour: canonical and lenient inputs, error reporting."""

import pytest

from slakit.chat import ChatParseError, parse_chat, serialize_chat

MINIMAL = "@Begin\n@Participants: ROD Rodney Analyst\n*ROD:\tso we agree .\n@End\n"


def test_minimal_transcript():
    doc = parse_chat(MINIMAL)
    assert len(doc.episodes) == 1
    assert doc.utterance_count == 1
    utt = doc.utterance_at(0)
    assert utt.speaker == "ROD"
    assert utt.text == "so we agree"
    assert utt.terminator == "."


def test_empty_body():
    doc = parse_chat("@Begin\n@Participants: ROD Rodney Analyst\n@End\n")
    assert doc.utterance_count == 0
    assert len(doc.episodes) == 1


def test_missing_participants_is_e002():
    with pytest.raises(ChatParseError) as exc:
        parse_chat("@Begin\n*ROD:\thi .\n@End\n")
    assert exc.value.codes == ["E002"]


def test_space_after_colon_normalizes_to_tab():
    doc = parse_chat(MINIMAL)
    assert "\t" in serialize_chat(doc)
    assert serialize_chat(doc) == serialize_chat(parse_chat(serialize_chat(doc)))


def test_crlf_and_blank_lines_tolerated():
    text = "@Begin\r\n\r\n@Participants: ROD Rodney Analyst\r\n*ROD:\thi .\r\n\r\n@End\r\n"
    doc = parse_chat(text)
    assert doc.utterance_count == 1


def test_continuation_lines_join():
    text = (
        "@Begin\n@Participants: ROD Rodney Analyst\n"
        "*ROD:\tso we\n\tagree .\n@End\n"
    )
    doc = parse_chat(text)
    assert doc.utterance_at(0).text == "so we agree"


def test_time_tier_sets_span():
    text = (
        "@Begin\n@Participants: ROD Rodney Analyst\n"
        "*ROD:\thi .\n%tim:\t1000_2000\n@End\n"
    )
    utt = parse_chat(text).utterance_at(0)
    assert utt.span is not None
    assert (utt.span.start_ms, utt.span.end_ms) == (1000, 2000)
    assert utt.tiers == ()


def test_new_episode_opens_section():
    text = (
        "@Begin\n@Participants: ROD Rodney Analyst\n"
        "*ROD:\tfirst .\n@New Episode\n@Situation:\tkickoff meeting\n*ROD:\tsecond .\n@End\n"
    )
    doc = parse_chat(text)
    assert len(doc.episodes) == 2
    assert doc.episodes[1].headers[0].kind == "Situation"


def test_participant_attribute_headers():
    text = (
        "@Begin\n@Participants: ROD Rodney Analyst\n"
        "@Birth of ROD:\t1970-01-01\n@SES of ROD:\tprofessional\n@End\n"
    )
    doc = parse_chat(text)
    assert doc.participants[0].birth == "1970-01-01"
    assert doc.participants[0].ses == "professional"


def test_trailing_comment_block():
    text = (
        "@Begin\n@Participants: ROD Rodney Analyst\n"
        "*ROD:\thi .\n@Comment:\tNET1:v1 MOVE=issue 5000_9000\n@End\n"
    )
    doc = parse_chat(text)
    assert len(doc.trailing_comments) == 1
    assert doc.trailing_comments[0].span.start_ms == 5000
    assert doc.trailing_comments[0].body == "NET1:v1 MOVE=issue"


@pytest.mark.parametrize(
    "payload",
    [
        b"",
        b"\x00\x01\x02\xfe\xff" * 40,
        bytes(range(256)),
        "no chat here at all".encode(),
        b"@Begin\xff\xfe@End",
    ],
)
def test_arbitrary_bytes_never_panic(payload):
    with pytest.raises(ChatParseError):
        parse_chat(payload)


def test_diagnostics_ordered_by_line_then_code():
    text = "@Begin\n*XYZ:\thi\n%c0m:\tx\n@End\n"
    with pytest.raises(ChatParseError) as exc:
        parse_chat(text)
    diags = exc.value.diagnostics
    assert [d.line for d in diags] == sorted(d.line for d in diags)
    # repeated parses agree exactly
    with pytest.raises(ChatParseError) as exc2:
        parse_chat(text)
    assert exc2.value.diagnostics == diags
