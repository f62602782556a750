"""The XML file corpus.

A store root holds the project index, per-project files, per-occasion
documents (occasion XML, events, media plus waveform sidecar), and the
append-only contact/place/resource registries. Every XML document carries a
revision attribute; writers cite the revision they read and lose on
mismatch. Files land via temp-write-then-rename, so readers never see a
torn document.
"""

from slakit.store.documents import (
    DocumentNotFoundError,
    DocumentStore,
    RevisionConflictError,
    StoreError,
)
from slakit.store.corpus import (
    CorpusStore,
    OccasionRecord,
    ProjectFile,
    ProjectIndex,
    ProjectIndexEntry,
    StoreLayoutError,
)
from slakit.store.registries import (
    AppendOnlyError,
    ContactRecord,
    PlaceRecord,
    ResourceRecord,
    contact_to_participant,
)

__all__ = [
    "DocumentNotFoundError",
    "DocumentStore",
    "RevisionConflictError",
    "StoreError",
    "CorpusStore",
    "OccasionRecord",
    "ProjectFile",
    "ProjectIndex",
    "ProjectIndexEntry",
    "StoreLayoutError",
    "AppendOnlyError",
    "ContactRecord",
    "PlaceRecord",
    "ResourceRecord",
    "contact_to_participant",
]
