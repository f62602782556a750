"""Append-only support registries: contacts, places, resources.

Contacts grow a new revision on every change, leaving old details intact so
a contact history accumulates across occasions; the latest revision feeds
the transcript's participant headers. Places fill changeable headers on
demand. The resource log records language artefacts and never deletes.
"""

from __future__ import annotations

import re
import uuid
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Callable

from slakit.chat.model import PARTICIPANT_CODE_RE, Participant
from slakit.store.documents import DocumentStore, StoreError

RESOURCE_KINDS = ("text", "image", "audio", "video", "other")


class AppendOnlyError(StoreError):
    """Attempted to remove or rewrite an append-only record."""


@dataclass(frozen=True)
class ContactRecord:
    contact_id: str
    revision: int
    code: str
    name: str
    role: str
    birth: str | None = None
    age: str | None = None
    ses: str | None = None
    sex: str | None = None
    valid_from: str = ""


@dataclass(frozen=True)
class PlaceRecord:
    place_id: str
    situation: str
    activities: str
    room_layout: str


@dataclass(frozen=True)
class ResourceRecord:
    resource_id: str
    kind: str
    location: str
    description: str
    collected_at: str
    occasion_ids: tuple[str, ...] = ()


def contact_to_participant(record: ContactRecord) -> Participant:
    """The transcript-side view of a contact's latest details."""
    return Participant(
        code=record.code,
        name=record.name,
        role=record.role,
        birth=record.birth,
        age=record.age,
        ses=record.ses,
        sex=record.sex,
    )


def _new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"


class _RegistryBase:
    doc_id: str
    root_tag: str

    def __init__(self, docs: DocumentStore, clock: Callable[[], str]):
        self.docs = docs
        self.clock = clock

    def _load(self) -> ET.Element:
        from slakit.store.documents import DocumentNotFoundError

        try:
            content, _ = self.docs.get_document(self.doc_id)
        except DocumentNotFoundError:
            return ET.Element(self.root_tag)
        return ET.fromstring(content)

    def _update(self, mutate: Callable[[ET.Element], None]) -> None:
        """Read-modify-write with optimistic retries (in-process contention)."""
        from slakit.store.documents import DocumentNotFoundError, RevisionConflictError

        for _ in range(16):
            try:
                content, revision = self.docs.get_document(self.doc_id)
                root = ET.fromstring(content)
            except DocumentNotFoundError:
                root, revision = ET.Element(self.root_tag), 0
            mutate(root)
            try:
                self.docs.put_document(
                    self.doc_id, ET.tostring(root, encoding="unicode"), revision
                )
                return
            except RevisionConflictError:
                continue
        raise StoreError(f"persistent write contention on {self.doc_id}")


class ContactRegistry(_RegistryBase):
    doc_id = "contacts"
    root_tag = "contacts"

    @staticmethod
    def _record(el: ET.Element) -> ContactRecord:
        return ContactRecord(
            contact_id=el.get("id", ""),
            revision=int(el.get("revision", "0")),
            code=el.get("code", ""),
            name=el.get("name", ""),
            role=el.get("role", ""),
            birth=el.get("birth"),
            age=el.get("age"),
            ses=el.get("ses"),
            sex=el.get("sex"),
            valid_from=el.get("valid-from", ""),
        )

    def upsert(
        self,
        code: str,
        name: str,
        role: str,
        birth: str | None = None,
        age: str | None = None,
        ses: str | None = None,
        sex: str | None = None,
        contact_id: str | None = None,
    ) -> ContactRecord:
        """Append a new revision for the contact (identified by id or code).

        Identical resubmissions still append: the history records the event
        itself, not just field changes.
        """
        if not PARTICIPANT_CODE_RE.match(code or ""):
            raise StoreError(f"contact code must be 3 chars A-Z0-9, got {code!r}")
        if not re.match(r"^\S+$", name or "") or not re.match(r"^\S+$", role or ""):
            raise StoreError("contact name and role must be single non-empty tokens")
        result: list[ContactRecord] = []

        def mutate(root: ET.Element) -> None:
            result.clear()
            prior = [
                el
                for el in root.findall("contact")
                if (contact_id and el.get("id") == contact_id)
                or (not contact_id and el.get("code") == code)
            ]
            if contact_id and not prior:
                raise StoreError(f"no contact {contact_id!r}")
            cid = prior[-1].get("id") if prior else _new_id("c")
            revision = int(prior[-1].get("revision", "0")) + 1 if prior else 1
            el = ET.SubElement(root, "contact")
            el.set("id", cid)
            el.set("revision", str(revision))
            el.set("code", code)
            el.set("name", name)
            el.set("role", role)
            for attr, value in (("birth", birth), ("age", age), ("ses", ses), ("sex", sex)):
                if value is not None:
                    el.set(attr, value)
            el.set("valid-from", self.clock())
            result.append(self._record(el))

        self._update(mutate)
        return result[0]

    def history(self, contact_id: str) -> list[ContactRecord]:
        """Every revision of one contact, oldest first, all immutable."""
        records = [
            self._record(el)
            for el in self._load().findall("contact")
            if el.get("id") == contact_id
        ]
        if not records:
            raise StoreError(f"no contact {contact_id!r}")
        return sorted(records, key=lambda r: r.revision)

    def latest(self, key: str) -> ContactRecord:
        """Newest revision by contact id or by code."""
        matches = [
            self._record(el)
            for el in self._load().findall("contact")
            if el.get("id") == key or el.get("code") == key
        ]
        if not matches:
            raise StoreError(f"no contact {key!r}")
        return max(matches, key=lambda r: r.revision)

    def list_latest(self) -> list[ContactRecord]:
        by_id: dict[str, ContactRecord] = {}
        for el in self._load().findall("contact"):
            record = self._record(el)
            head = by_id.get(record.contact_id)
            if head is None or record.revision > head.revision:
                by_id[record.contact_id] = record
        return sorted(by_id.values(), key=lambda r: (r.code, r.contact_id))


class PlaceRegistry(_RegistryBase):
    doc_id = "places"
    root_tag = "places"

    @staticmethod
    def _record(el: ET.Element) -> PlaceRecord:
        return PlaceRecord(
            place_id=el.get("id", ""),
            situation=el.get("situation", ""),
            activities=el.get("activities", ""),
            room_layout=el.get("room-layout", ""),
        )

    def add(self, situation: str, activities: str = "", room_layout: str = "") -> PlaceRecord:
        if not situation.strip():
            raise StoreError("a place needs at least a situation description")
        result: list[PlaceRecord] = []

        def mutate(root: ET.Element) -> None:
            result.clear()
            el = ET.SubElement(root, "place")
            el.set("id", _new_id("pl"))
            el.set("situation", situation)
            el.set("activities", activities)
            el.set("room-layout", room_layout)
            result.append(self._record(el))

        self._update(mutate)
        return result[0]

    def get(self, place_id: str) -> PlaceRecord:
        for el in self._load().findall("place"):
            if el.get("id") == place_id:
                return self._record(el)
        raise StoreError(f"no place {place_id!r}")

    def list(self) -> list[PlaceRecord]:
        return [self._record(el) for el in self._load().findall("place")]


class ResourceRegistry(_RegistryBase):
    doc_id = "resources"
    root_tag = "resources"

    @staticmethod
    def _record(el: ET.Element) -> ResourceRecord:
        return ResourceRecord(
            resource_id=el.get("id", ""),
            kind=el.get("kind", ""),
            location=el.get("location", ""),
            description=el.get("description", ""),
            collected_at=el.get("collected-at", ""),
            occasion_ids=tuple(o.get("ref", "") for o in el.findall("occasion")),
        )

    def log(
        self,
        kind: str,
        location: str,
        description: str = "",
        collected_at: str | None = None,
        occasion_ids: tuple[str, ...] = (),
    ) -> ResourceRecord:
        if kind not in RESOURCE_KINDS:
            raise StoreError(f"resource kind must be one of {RESOURCE_KINDS}, got {kind!r}")
        if not location.strip():
            raise StoreError("a resource needs a location")
        result: list[ResourceRecord] = []

        def mutate(root: ET.Element) -> None:
            result.clear()
            el = ET.SubElement(root, "resource")
            el.set("id", _new_id("r"))
            el.set("kind", kind)
            el.set("location", location)
            el.set("description", description)
            el.set("collected-at", collected_at or self.clock())
            for oid in occasion_ids:
                o_el = ET.SubElement(el, "occasion")
                o_el.set("ref", oid)
            result.append(self._record(el))

        self._update(mutate)
        return result[0]

    def get(self, resource_id: str) -> ResourceRecord:
        for el in self._load().findall("resource"):
            if el.get("id") == resource_id:
                return self._record(el)
        raise StoreError(f"no resource {resource_id!r}")

    def list(self) -> list[ResourceRecord]:
        return [self._record(el) for el in self._load().findall("resource")]

    def delete(self, resource_id: str) -> None:
        raise AppendOnlyError("the resource log is append-only; records cannot be deleted")
