"""Revision-checked XML document storage.

Each document is one file under the root; its committed revision lives in a
``revision`` attribute on the XML root element. put_document parses the
content, stamps revision = expected + 1, writes a temp file, fsyncs, and
renames into place; a writer citing a stale revision gets a conflict and
nothing changes. Per-document locks serialize writers in this process;
os.replace keeps readers untorn regardless.
"""

from __future__ import annotations

import os
import re
import tempfile
import threading
import xml.etree.ElementTree as ET
from pathlib import Path


class StoreError(Exception):
    """Base for storage failures."""


class DocumentNotFoundError(StoreError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"no document {doc_id!r}")


class RevisionConflictError(StoreError):
    def __init__(self, doc_id: str, expected: int, actual: int):
        self.doc_id = doc_id
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"document {doc_id!r}: expected revision {expected}, stored is {actual}"
        )


_DOC_ID_RE = re.compile(r"^[A-Za-z0-9_.-]+(/[A-Za-z0-9_.-]+)*$")


class DocumentStore:
    """XML documents addressed by slash-separated ids, one file per id."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _lock_for(self, doc_id: str) -> threading.Lock:
        with self._registry_lock:
            lock = self._locks.get(doc_id)
            if lock is None:
                lock = self._locks[doc_id] = threading.Lock()
            return lock

    def path_of(self, doc_id: str) -> Path:
        if not _DOC_ID_RE.match(doc_id) or ".." in doc_id.split("/"):
            raise StoreError(f"bad document id {doc_id!r}")
        return self.root / (doc_id + ".xml")

    def exists(self, doc_id: str) -> bool:
        return self.path_of(doc_id).exists()

    def current_revision(self, doc_id: str) -> int:
        """Committed revision; 0 when the document does not exist yet."""
        path = self.path_of(doc_id)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            return 0
        return self._revision_of(data, doc_id)

    @staticmethod
    def _revision_of(data: bytes, doc_id: str) -> int:
        try:
            root = ET.fromstring(data)
        except ET.ParseError as exc:
            raise StoreError(f"stored document {doc_id!r} is not XML: {exc}") from exc
        rev = root.get("revision")
        if rev is None or not rev.isdigit():
            raise StoreError(f"stored document {doc_id!r} has no revision attribute")
        return int(rev)

    def get_document(self, doc_id: str) -> tuple[str, int]:
        """Latest committed content and its revision."""
        path = self.path_of(doc_id)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            raise DocumentNotFoundError(doc_id) from None
        return data.decode("utf-8"), self._revision_of(data, doc_id)

    def put_document(self, doc_id: str, content: str, expected_revision: int) -> int:
        """Commit content as revision expected+1; conflict on stale expected.

        Content must be well-formed XML; any revision attribute it carries is
        replaced with the committed number.
        """
        try:
            root = ET.fromstring(content)
        except ET.ParseError as exc:
            raise StoreError(f"content for {doc_id!r} is not well-formed XML: {exc}") from exc

        path = self.path_of(doc_id)
        with self._lock_for(doc_id):
            current = self.current_revision(doc_id)
            if current != expected_revision:
                raise RevisionConflictError(doc_id, expected_revision, current)
            new_revision = expected_revision + 1
            root.set("revision", str(new_revision))
            payload = b'<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(
                root, encoding="unicode"
            ).encode("utf-8") + b"\n"
            self.write_file(path, payload)
            return new_revision

    @staticmethod
    def write_file(path: Path, payload: bytes) -> None:
        """Durable write: temp file in the same directory, fsync, rename."""
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, path)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise

