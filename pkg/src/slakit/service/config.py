"""Service configuration from environment variables or CLI flags."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path


@dataclass
class Settings:
    store_root: Path
    host: str = "127.0.0.1"
    port: int = 8537
    session_timeout_s: float = 1800.0
    enumeration_bound: int = 12
    base_bucket: int = 512

    @classmethod
    def from_env(cls, **overrides) -> "Settings":
        """SLAKIT_STORE_ROOT is required unless overridden; the rest default."""
        values = {
            "store_root": os.environ.get("SLAKIT_STORE_ROOT"),
            "host": os.environ.get("SLAKIT_HOST", cls.host),
            "port": int(os.environ.get("SLAKIT_PORT", cls.port)),
            "session_timeout_s": float(
                os.environ.get("SLAKIT_SESSION_TIMEOUT_S", cls.session_timeout_s)
            ),
            "enumeration_bound": int(
                os.environ.get("SLAKIT_ENUMERATION_BOUND", cls.enumeration_bound)
            ),
            "base_bucket": int(os.environ.get("SLAKIT_BASE_BUCKET", cls.base_bucket)),
        }
        values.update(overrides)
        if not values["store_root"]:
            raise ValueError("store root not configured (SLAKIT_STORE_ROOT)")
        values["store_root"] = Path(values["store_root"])
        return cls(**values)
