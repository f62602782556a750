"""HTTP service exposing the transcription and indexing workflow."""

from slakit.service.config import Settings
from slakit.service.app import create_app

__all__ = ["Settings", "create_app"]
