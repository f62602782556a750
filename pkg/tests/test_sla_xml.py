"""Occasion-XML conversion, checked against an independent schema walker.

The oracle below re-states the schema rules (docs/sla-xml.xsd) from scratch
and never calls the production checker, so generator and checker cannot
share a bug.
"""

import random
import re
import xml.etree.ElementTree as ET

import pytest

from slakit.chat import (
    ChatDocument,
    Participant,
    SlaXmlError,
    append_utterance,
    attach_tier,
    from_sla_xml,
    to_sla_xml,
)
from slakit.timebase import TimeSpan

from genchat import random_document

# -- independent schema oracle ----------------------------------------------

_CODE = re.compile(r"^[A-Z0-9]{3}$")
_TIER = re.compile(r"^[a-z]{3}$")
_PAIRS = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*=[A-Za-z0-9][A-Za-z0-9_-]*"
                    r"( [A-Za-z][A-Za-z0-9_-]*=[A-Za-z0-9][A-Za-z0-9_-]*)*$")


def assert_occasion_schema(xml_text: str) -> None:
    root = ET.fromstring(xml_text)
    assert root.tag == "occasion"
    assert set(root.attrib) <= {"id", "title", "revision"}

    tags = [child.tag for child in root]
    assert tags.count("participants") == 1
    assert tags.count("headers") <= 1
    order = {"participants": 0, "headers": 1, "episode": 2, "comment": 3}
    ranks = [order[t] for t in tags]
    assert ranks == sorted(ranks), f"children out of order: {tags}"

    for part in root.find("participants"):
        assert part.tag == "participant"
        assert set(part.attrib) <= {"code", "name", "role", "birth", "age", "ses", "sex"}
        assert _CODE.match(part.get("code", ""))
        assert part.get("name") and part.get("role")

    headers = root.find("headers")
    if headers is not None:
        for el in headers:
            assert el.tag == "header" and el.get("kind")

    for episode in root.findall("episode"):
        for child in episode:
            assert child.tag in {"header", "utterance"}
            if child.tag == "header":
                assert child.get("kind")
                continue
            assert _CODE.match(child.get("speaker", ""))
            assert child.get("terminator") in {"period", "question", "exclamation"}
            start, end = child.get("start"), child.get("end")
            assert (start is None) == (end is None)
            if start is not None:
                assert 0 <= int(start) < int(end)
            texts = [e for e in child if e.tag == "text"]
            assert len(texts) == 1
            for sub in child:
                assert sub.tag in {"text", "tier", "index"}
                if sub.tag == "tier":
                    assert _TIER.match(sub.get("code", ""))
                    assert sub.get("code") != "tim"
                if sub.tag == "index":
                    assert re.match(r"^[A-Za-z0-9_-]+$", sub.get("network", ""))
                    assert int(sub.get("version")) >= 1
                    s, _, e = sub.get("span", "").partition("_")
                    assert 0 <= int(s) < int(e)
                    assert _PAIRS.match((sub.text or "").strip())

    for comment in root.findall("comment"):
        assert 0 <= int(comment.get("start")) < int(comment.get("end"))
        assert (comment.text or "").strip()


# -- example cases ------------------------------------------------------------


@pytest.fixture
def doc():
    d = ChatDocument.new([Participant("ROD", "Rodney", "Analyst", birth="1970-01-01")])
    d = append_utterance(d, "ROD", "so we agree", ".", span=TimeSpan(0, 2500))
    return d


def test_single_utterance_occasion(doc):
    xml = to_sla_xml(doc, occasion_id="o1", title="Kickoff")
    assert_occasion_schema(xml)
    root = ET.fromstring(xml)
    utts = root.findall("./episode/utterance")
    assert len(utts) == 1
    assert utts[0].get("speaker") == "ROD"
    assert root.get("id") == "o1"


def test_index_tier_becomes_index_element(doc):
    d = attach_tier(doc, 0, "ind", "NET1:v2 MOVE=decision REALISATION=verbal 100_600")
    xml = to_sla_xml(d)
    assert_occasion_schema(xml)
    idx = ET.fromstring(xml).find("./episode/utterance/index")
    assert idx is not None
    assert idx.get("network") == "NET1"
    assert idx.get("version") == "2"
    assert idx.get("span") == "100_600"
    assert idx.text.strip() == "MOVE=decision REALISATION=verbal"
    assert from_sla_xml(xml) == d


def test_empty_body_is_headers_only():
    d = ChatDocument.new([Participant("ROD", "Rodney", "Analyst")])
    xml = to_sla_xml(d)
    assert_occasion_schema(xml)
    root = ET.fromstring(xml)
    assert root.findall("./episode/utterance") == []


def test_round_trip_random_documents():
    rng = random.Random(42)
    for _ in range(100):
        d = random_document(rng)
        xml = to_sla_xml(d)
        assert_occasion_schema(xml)
        assert from_sla_xml(xml) == d


def test_missing_participants_is_e011():
    with pytest.raises(SlaXmlError) as exc:
        from_sla_xml("<occasion><episode /></occasion>")
    assert exc.value.codes == ["E011"]


def test_truncated_stream_is_e010():
    with pytest.raises(SlaXmlError) as exc:
        from_sla_xml("<occasion><participants>")
    assert exc.value.codes == ["E010"]


def test_non_xml_bytes_are_e010():
    with pytest.raises(SlaXmlError) as exc:
        from_sla_xml(b"\x00\x01 not xml")
    assert exc.value.codes == ["E010"]


def test_unknown_elements_are_e011():
    xml = (
        "<occasion><participants><participant code='ROD' name='R' role='A'/>"
        "</participants><blob/></occasion>"
    )
    with pytest.raises(SlaXmlError) as exc:
        from_sla_xml(xml)
    assert exc.value.codes == ["E011"]


def test_semantic_violations_surface_their_codes():
    xml = (
        "<occasion><participants><participant code='ROD' name='R' role='A'/>"
        "</participants><episode><utterance speaker='XYZ' terminator='period'>"
        "<text>hi</text></utterance></episode></occasion>"
    )
    with pytest.raises(SlaXmlError) as exc:
        from_sla_xml(xml)
    assert exc.value.codes == ["E003"]


def test_revision_attribute_tolerated():
    d = ChatDocument.new([Participant("ROD", "Rodney", "Analyst")])
    xml = to_sla_xml(d).replace("<occasion>", "<occasion revision=\"3\">")
    assert from_sla_xml(xml) == d
