"""Toolkit for spoken-language resources in organisational settings.

Subpackages:

* ``slakit.chat``     -- CHAT transcript model, parser, serializer, validator,
  structure-preserving edits, filtered views, and the shared occasion XML.
* ``slakit.media``    -- WAV decoding, waveform peak pyramids with a binary
  sidecar format, loop playback state, and excerpt extraction.
* ``slakit.networks`` -- system networks with immutable versioning, selection
  validation/enumeration, time-stamped index events, and transcript merging.
* ``slakit.reports``  -- indexing coverage, code locations, effort estimates,
  and SVG timelines.
* ``slakit.store``    -- the XML file corpus: project index, occasions, media,
  and append-only contact/place/resource registries with optimistic revisions.
* ``slakit.service``  -- the HTTP API tying the pieces into the transcription
  and indexing workflow.
"""

__version__ = "0.1.0"
