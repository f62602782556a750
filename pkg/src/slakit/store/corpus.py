"""Corpus layout and the typed operations over it.

    root/project-index.xml           all projects and their locations
    root/projects/<id>/project.xml   occasion links + resource inventory
    root/occasions/<id>/occasion.xml the occasion XML (transcript twin)
    root/occasions/<id>/events.xml   append-only index events
    root/occasions/<id>/media/audio.wav
    root/occasions/<id>/audio.slawf  waveform sidecar
    root/contacts.xml, places.xml, resources.xml
    root/networks/<id>/network.xml   append-only version history

Occasions link into any number of projects (and projects share occasions),
so unlinking never deletes occasion data.
"""

from __future__ import annotations

import datetime as _dt
import struct
import uuid
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from slakit.media.waveform import SIDECAR_MAGIC
from slakit.networks.model import (
    IndexEvent,
    NetworkVersion,
    Selection,
    System,
    SystemNetwork,
    check_systems,
)
from slakit.networks.selections import validate_selection
from slakit.networks import xmlio
from slakit.store.documents import (
    DocumentNotFoundError,
    DocumentStore,
    RevisionConflictError,
    StoreError,
)
from slakit.store.registries import ContactRegistry, PlaceRegistry, ResourceRegistry
from slakit.timebase import TimeSpan

INDEX_DOC = "project-index"


class StoreLayoutError(StoreError):
    """Root missing, already initialized, or structurally broken."""


class SelectionRejectedError(StoreError):
    """An index event's selection is invalid for its pinned version."""

    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(v.message for v in violations))


@dataclass(frozen=True)
class ProjectIndexEntry:
    project_id: str
    title: str
    path: str


@dataclass(frozen=True)
class ProjectIndex:
    entries: tuple[ProjectIndexEntry, ...]
    revision: int


@dataclass(frozen=True)
class ProjectFile:
    project_id: str
    title: str
    occasion_ids: tuple[str, ...]
    resource_ids: tuple[str, ...]
    revision: int


@dataclass(frozen=True)
class OccasionRecord:
    occasion_id: str
    xml: str
    revision: int
    has_media: bool
    has_sidecar: bool
    duration_ms: int | None


def _now_iso() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"


class CorpusStore:
    """One corpus root; compose registries and document storage."""

    def __init__(self, root: Path | str, clock: Callable[[], str] = _now_iso):
        self.root = Path(root)
        self.docs = DocumentStore(self.root)
        self.clock = clock
        self.contacts = ContactRegistry(self.docs, clock)
        self.places = PlaceRegistry(self.docs, clock)
        self.resources = ResourceRegistry(self.docs, clock)

    # -- lifecycle ----------------------------------------------------------

    @classmethod
    def init(cls, root: Path | str, clock: Callable[[], str] = _now_iso) -> "CorpusStore":
        """Create the layout in an empty or absent root; the index starts empty."""
        store = cls(root, clock)
        if store.docs.exists(INDEX_DOC):
            raise StoreLayoutError(f"{store.root} is already an initialized corpus")
        store.root.mkdir(parents=True, exist_ok=True)
        if any(store.root.iterdir()):
            raise StoreLayoutError(f"{store.root} is not empty")
        for sub in ("projects", "occasions", "networks"):
            (store.root / sub).mkdir()
        store.docs.put_document(INDEX_DOC, "<project-index />", 0)
        return store

    @classmethod
    def open(cls, root: Path | str, clock: Callable[[], str] = _now_iso) -> "CorpusStore":
        store = cls(root, clock)
        if not store.docs.exists(INDEX_DOC):
            raise StoreLayoutError(f"{store.root} holds no corpus (missing project index)")
        return store

    # -- projects -------------------------------------------------------------

    def project_index(self) -> ProjectIndex:
        content, revision = self.docs.get_document(INDEX_DOC)
        root = ET.fromstring(content)
        entries = tuple(
            ProjectIndexEntry(
                project_id=el.get("id", ""),
                title=el.get("title", ""),
                path=el.get("path", ""),
            )
            for el in root.findall("project")
        )
        return ProjectIndex(entries=entries, revision=revision)

    def create_project(
        self, title: str, expected_index_revision: int | None = None
    ) -> ProjectFile:
        """Write the project file, then list it in the index atomically.

        Passing a stale expected_index_revision raises RevisionConflictError
        (the project file write is not repeated on retry by callers).
        """
        project_id = _new_id("p")
        doc_id = f"projects/{project_id}/project"
        project_el = ET.Element("project")
        project_el.set("id", project_id)
        project_el.set("title", title)
        self.docs.put_document(doc_id, ET.tostring(project_el, encoding="unicode"), 0)

        content, revision = self.docs.get_document(INDEX_DOC)
        if expected_index_revision is None:
            expected_index_revision = revision
        root = ET.fromstring(content)
        entry = ET.SubElement(root, "project")
        entry.set("id", project_id)
        entry.set("title", title)
        entry.set("path", f"projects/{project_id}/project.xml")
        self.docs.put_document(
            INDEX_DOC, ET.tostring(root, encoding="unicode"), expected_index_revision
        )
        return self.get_project(project_id)

    def get_project(self, project_id: str) -> ProjectFile:
        content, revision = self.docs.get_document(f"projects/{project_id}/project")
        root = ET.fromstring(content)
        return ProjectFile(
            project_id=root.get("id", ""),
            title=root.get("title", ""),
            occasion_ids=tuple(el.get("ref", "") for el in root.findall("occasion")),
            resource_ids=tuple(el.get("ref", "") for el in root.findall("resource")),
            revision=revision,
        )

    def _update_project(self, project_id: str, mutate) -> ProjectFile:
        doc_id = f"projects/{project_id}/project"
        for _ in range(16):
            content, revision = self.docs.get_document(doc_id)
            root = ET.fromstring(content)
            mutate(root)
            try:
                self.docs.put_document(doc_id, ET.tostring(root, encoding="unicode"), revision)
                return self.get_project(project_id)
            except RevisionConflictError:
                continue
        raise StoreError(f"persistent write contention on {doc_id}")

    def link_occasion(self, project_id: str, occasion_id: str) -> tuple[ProjectFile, bool]:
        """Record the link; idempotent, reporting whether anything changed."""
        if not self.occasion_exists(occasion_id):
            raise DocumentNotFoundError(f"occasions/{occasion_id}/occasion")
        changed: list[bool] = []

        def mutate(root: ET.Element) -> None:
            changed.clear()
            present = any(el.get("ref") == occasion_id for el in root.findall("occasion"))
            changed.append(not present)
            if not present:
                el = ET.SubElement(root, "occasion")
                el.set("ref", occasion_id)

        project = self._update_project(project_id, mutate)
        return project, changed[0]

    def unlink_occasion(self, project_id: str, occasion_id: str) -> ProjectFile:
        def mutate(root: ET.Element) -> None:
            for el in list(root.findall("occasion")):
                if el.get("ref") == occasion_id:
                    root.remove(el)

        return self._update_project(project_id, mutate)

    def link_resource(self, project_id: str, resource_id: str) -> ProjectFile:
        self.resources.get(resource_id)  # raises if unknown

        def mutate(root: ET.Element) -> None:
            if not any(el.get("ref") == resource_id for el in root.findall("resource")):
                el = ET.SubElement(root, "resource")
                el.set("ref", resource_id)

        return self._update_project(project_id, mutate)

    # -- occasions ------------------------------------------------------------

    def occasion_doc_id(self, occasion_id: str) -> str:
        return f"occasions/{occasion_id}/occasion"

    def occasion_exists(self, occasion_id: str) -> bool:
        return self.docs.exists(self.occasion_doc_id(occasion_id))

    def create_occasion(self, occasion_id: str | None, xml: str) -> str:
        occasion_id = occasion_id or _new_id("o")
        doc_id = self.occasion_doc_id(occasion_id)
        if self.docs.exists(doc_id):
            raise StoreLayoutError(f"occasion {occasion_id} already exists")
        self.docs.put_document(doc_id, xml, 0)
        return occasion_id

    def get_occasion(self, occasion_id: str) -> tuple[str, int]:
        return self.docs.get_document(self.occasion_doc_id(occasion_id))

    def put_occasion(self, occasion_id: str, xml: str, expected_revision: int) -> int:
        return self.docs.put_document(self.occasion_doc_id(occasion_id), xml, expected_revision)

    def occasion_record(self, occasion_id: str) -> OccasionRecord:
        xml, revision = self.get_occasion(occasion_id)
        return OccasionRecord(
            occasion_id=occasion_id,
            xml=xml,
            revision=revision,
            has_media=self.media_path(occasion_id).exists(),
            has_sidecar=self.sidecar_path(occasion_id).exists(),
            duration_ms=self.occasion_duration_ms(occasion_id),
        )

    def list_occasions(self) -> list[str]:
        base = self.root / "occasions"
        if not base.exists():
            return []
        return sorted(p.name for p in base.iterdir() if (p / "occasion.xml").exists())

    # -- media ------------------------------------------------------------------

    def media_path(self, occasion_id: str) -> Path:
        return self.root / "occasions" / occasion_id / "media" / "audio.wav"

    def sidecar_path(self, occasion_id: str) -> Path:
        return self.root / "occasions" / occasion_id / "audio.slawf"

    def put_media(self, occasion_id: str, wav_bytes: bytes) -> None:
        """Store/replace the occasion's audio; the old sidecar is dropped
        first so a reader never pairs fresh audio with a stale pyramid."""
        if not self.occasion_exists(occasion_id):
            raise DocumentNotFoundError(self.occasion_doc_id(occasion_id))
        sidecar = self.sidecar_path(occasion_id)
        try:
            sidecar.unlink()
        except FileNotFoundError:
            pass
        DocumentStore.write_file(self.media_path(occasion_id), wav_bytes)

    def get_media(self, occasion_id: str) -> bytes:
        try:
            return self.media_path(occasion_id).read_bytes()
        except FileNotFoundError:
            raise DocumentNotFoundError(f"occasions/{occasion_id}/media/audio.wav") from None

    def put_sidecar(self, occasion_id: str, sidecar_bytes: bytes) -> None:
        DocumentStore.write_file(self.sidecar_path(occasion_id), sidecar_bytes)

    def get_sidecar(self, occasion_id: str) -> bytes:
        try:
            return self.sidecar_path(occasion_id).read_bytes()
        except FileNotFoundError:
            raise DocumentNotFoundError(f"occasions/{occasion_id}/audio.slawf") from None

    def occasion_duration_ms(self, occasion_id: str) -> int | None:
        """Media duration from the sidecar header; None before ingest finishes."""
        try:
            head = self.get_sidecar(occasion_id)[: len(SIDECAR_MAGIC) + 16]
        except DocumentNotFoundError:
            return None
        if head[: len(SIDECAR_MAGIC)] != SIDECAR_MAGIC:
            return None
        rate, total = struct.unpack_from("<IQ", head, len(SIDECAR_MAGIC))
        return (1000 * total) // rate if rate else None

    # -- index events -------------------------------------------------------------

    def events_doc_id(self, occasion_id: str) -> str:
        return f"occasions/{occasion_id}/events"

    def list_events(self, occasion_id: str) -> list[IndexEvent]:
        try:
            content, _ = self.docs.get_document(self.events_doc_id(occasion_id))
        except DocumentNotFoundError:
            return []
        return xmlio.events_from_xml(content)[1]

    def record_index_event(
        self,
        occasion_id: str,
        network_id: str,
        version: int,
        selection: Selection,
        span: TimeSpan,
        note: str = "",
        author: str = "",
    ) -> IndexEvent:
        """Validate against the pinned version and occasion duration, then
        append to the occasion's event log."""
        if not self.occasion_exists(occasion_id):
            raise DocumentNotFoundError(self.occasion_doc_id(occasion_id))
        network = self.get_network(network_id)
        try:
            pinned = network.version(version)
        except KeyError:
            raise DocumentNotFoundError(f"networks/{network_id}@v{version}") from None
        violations = validate_selection(pinned, selection)
        if violations:
            raise SelectionRejectedError(violations)
        duration = self.occasion_duration_ms(occasion_id)
        if duration is None:
            raise StoreError(
                f"occasion {occasion_id} has no ingested media; span range unknown"
            )
        if span.end_ms > duration:
            raise StoreError(
                f"event span {span.as_token()} exceeds occasion duration {duration} ms"
            )
        event = IndexEvent(
            event_id=_new_id("e"),
            occasion_id=occasion_id,
            network_id=network_id,
            network_version=version,
            selection=selection,
            span=span,
            note=note,
            author=author,
            created_at=self.clock(),
        )
        doc_id = self.events_doc_id(occasion_id)
        for _ in range(16):
            try:
                content, revision = self.docs.get_document(doc_id)
                _, events = xmlio.events_from_xml(content)
            except DocumentNotFoundError:
                events, revision = [], 0
            events.append(event)
            try:
                self.docs.put_document(
                    doc_id, xmlio.events_to_xml(occasion_id, events), revision
                )
                return event
            except RevisionConflictError:
                continue
        raise StoreError(f"persistent write contention on {doc_id}")

    # -- networks --------------------------------------------------------------------

    def network_doc_id(self, network_id: str) -> str:
        return f"networks/{network_id}/network"

    def create_network(
        self, name: str, systems: Iterable[System], network_id: str | None = None
    ) -> SystemNetwork:
        """Version 1 of a new network, stored immutably."""
        systems = check_systems(systems)
        network = SystemNetwork(
            network_id=network_id or _new_id("net"),
            name=name,
            versions=(NetworkVersion(version=1, systems=systems),),
        )
        doc_id = self.network_doc_id(network.network_id)
        if self.docs.exists(doc_id):
            raise StoreLayoutError(f"network {network.network_id} already exists")
        self.docs.put_document(doc_id, xmlio.network_to_xml(network), 0)
        return network

    def get_network(self, network_id: str) -> SystemNetwork:
        content, _ = self.docs.get_document(self.network_doc_id(network_id))
        return xmlio.network_from_xml(content)

    def list_networks(self) -> list[SystemNetwork]:
        base = self.root / "networks"
        if not base.exists():
            return []
        return [
            self.get_network(p.name)
            for p in sorted(base.iterdir())
            if (p / "network.xml").exists()
        ]

    def revise_network(self, network_id: str, systems: Iterable[System]) -> NetworkVersion:
        """Append version n+1; versions 1..n stay byte-identical."""
        systems = check_systems(systems)
        doc_id = self.network_doc_id(network_id)
        for _ in range(16):
            content, revision = self.docs.get_document(doc_id)
            network = xmlio.network_from_xml(content)
            new_version = NetworkVersion(version=len(network.versions) + 1, systems=systems)
            updated = SystemNetwork(
                network_id=network.network_id,
                name=network.name,
                versions=network.versions + (new_version,),
                deleted=network.deleted,
            )
            try:
                self.docs.put_document(doc_id, xmlio.network_to_xml(updated), revision)
                return new_version
            except RevisionConflictError:
                continue
        raise StoreError(f"persistent write contention on {doc_id}")

    def tombstone_network(self, network_id: str) -> SystemNetwork:
        """Flag deleted; versions stay retrievable (events pin them forever)."""
        doc_id = self.network_doc_id(network_id)
        for _ in range(16):
            content, revision = self.docs.get_document(doc_id)
            network = xmlio.network_from_xml(content)
            updated = SystemNetwork(
                network_id=network.network_id,
                name=network.name,
                versions=network.versions,
                deleted=True,
            )
            try:
                self.docs.put_document(doc_id, xmlio.network_to_xml(updated), revision)
                return updated
            except RevisionConflictError:
                continue
        raise StoreError(f"persistent write contention on {doc_id}")

    # -- integrity ----------------------------------------------------------------------

    def integrity_check(self) -> list[str]:
        """Dangling references across the corpus; empty means consistent."""
        problems: list[str] = []
        index = self.project_index()
        known_resources = {r.resource_id for r in self.resources.list()} if self.docs.exists(
            "resources"
        ) else set()
        for entry in index.entries:
            try:
                project = self.get_project(entry.project_id)
            except StoreError as exc:
                problems.append(f"project {entry.project_id}: unreadable ({exc})")
                continue
            for occasion_id in project.occasion_ids:
                if not self.occasion_exists(occasion_id):
                    problems.append(
                        f"project {entry.project_id}: dangling occasion link {occasion_id}"
                    )
            for resource_id in project.resource_ids:
                if resource_id not in known_resources:
                    problems.append(
                        f"project {entry.project_id}: dangling resource link {resource_id}"
                    )
        listed = {entry.project_id for entry in index.entries}
        base = self.root / "projects"
        if base.exists():
            for p in sorted(base.iterdir()):
                if (p / "project.xml").exists() and p.name not in listed:
                    problems.append(f"project {p.name} on disk but not in the index")
        for occasion_id in self.list_occasions():
            for event in self.list_events(occasion_id):
                if not self.docs.exists(self.network_doc_id(event.network_id)):
                    problems.append(
                        f"occasion {occasion_id}: event {event.event_id} cites "
                        f"unknown network {event.network_id}"
                    )
        return problems
