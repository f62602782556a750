"""XML wire form for networks (network.xml) and index events (events.xml).

Both documents are append-only element lists: a network file gains version
elements, an events file gains event elements; nothing is rewritten.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from slakit.networks.model import (
    IndexEvent,
    NetworkDefinitionError,
    NetworkVersion,
    Selection,
    System,
    SystemNetwork,
    check_systems,
    format_entry,
    parse_entry,
)
from slakit.timebase import TimeSpan


def network_to_xml(network: SystemNetwork) -> str:
    root = ET.Element("network")
    root.set("id", network.network_id)
    root.set("name", network.name)
    root.set("deleted", "true" if network.deleted else "false")
    for version in network.versions:
        v_el = ET.SubElement(root, "version")
        v_el.set("number", str(version.version))
        for sys_ in version.systems:
            s_el = ET.SubElement(v_el, "system")
            s_el.set("name", sys_.name)
            s_el.set("entry", format_entry(sys_.entry))
            for opt in sys_.options:
                o_el = ET.SubElement(s_el, "option")
                o_el.set("name", opt)
    tree = ET.ElementTree(root)
    ET.indent(tree, space="  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def network_from_xml(xml: str | bytes) -> SystemNetwork:
    root = ET.fromstring(xml)
    if root.tag != "network":
        raise NetworkDefinitionError(f"expected <network>, got <{root.tag}>")
    versions = []
    for v_el in root.findall("version"):
        systems = tuple(
            System(
                name=s_el.get("name", ""),
                entry=parse_entry(s_el.get("entry", "TRUE")),
                options=tuple(o.get("name", "") for o in s_el.findall("option")),
            )
            for s_el in v_el.findall("system")
        )
        check_systems(systems)
        versions.append(NetworkVersion(version=int(v_el.get("number", "0")), systems=systems))
    versions.sort(key=lambda v: v.version)
    if [v.version for v in versions] != list(range(1, len(versions) + 1)):
        raise NetworkDefinitionError("version numbers must run 1..n")
    return SystemNetwork(
        network_id=root.get("id", ""),
        name=root.get("name", ""),
        versions=tuple(versions),
        deleted=root.get("deleted") == "true",
    )


def events_to_xml(occasion_id: str, events: list[IndexEvent]) -> str:
    root = ET.Element("events")
    root.set("occasion", occasion_id)
    for event in events:
        e_el = ET.SubElement(root, "event")
        e_el.set("id", event.event_id)
        e_el.set("network", event.network_id)
        e_el.set("version", str(event.network_version))
        e_el.set("span", event.span.as_token())
        if event.author:
            e_el.set("author", event.author)
        if event.created_at:
            e_el.set("created-at", event.created_at)
        for system, option in sorted(event.selection.choices):
            c_el = ET.SubElement(e_el, "choice")
            c_el.set("system", system)
            c_el.set("option", option)
        if event.note:
            n_el = ET.SubElement(e_el, "note")
            n_el.text = event.note
    tree = ET.ElementTree(root)
    ET.indent(tree, space="  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def events_from_xml(xml: str | bytes) -> tuple[str, list[IndexEvent]]:
    root = ET.fromstring(xml)
    if root.tag != "events":
        raise ValueError(f"expected <events>, got <{root.tag}>")
    occasion_id = root.get("occasion", "")
    events = []
    for e_el in root.findall("event"):
        note_el = e_el.find("note")
        events.append(
            IndexEvent(
                event_id=e_el.get("id", ""),
                occasion_id=occasion_id,
                network_id=e_el.get("network", ""),
                network_version=int(e_el.get("version", "0")),
                selection=Selection.from_pairs(
                    (c.get("system", ""), c.get("option", ""))
                    for c in e_el.findall("choice")
                ),
                span=TimeSpan.from_token(e_el.get("span", "")),
                note=(note_el.text or "") if note_el is not None else "",
                author=e_el.get("author", ""),
                created_at=e_el.get("created-at", ""),
            )
        )
    return occasion_id, events
