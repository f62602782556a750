"""Loop sessions: the only server state outside the corpus.

Each session owns one loop over one occasion, is addressed by an opaque
token, and expires after the configured idle time. Restarting the service
forgets sessions and nothing else.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from slakit.media.loop import LoopState
from slakit.service.errors import ApiError


@dataclass
class LoopSession:
    loop_id: str
    occasion_id: str
    state: LoopState
    contact_id: str = ""
    last_used: float = field(default_factory=time.monotonic)


class LoopRegistry:
    def __init__(self, timeout_s: float, clock=time.monotonic):
        self.timeout_s = timeout_s
        self.clock = clock
        self._sessions: dict[str, LoopSession] = {}
        self._lock = threading.Lock()

    def create(self, occasion_id: str, state: LoopState, contact_id: str = "") -> LoopSession:
        session = LoopSession(
            loop_id=f"l-{uuid.uuid4().hex[:12]}",
            occasion_id=occasion_id,
            state=state,
            contact_id=contact_id,
            last_used=self.clock(),
        )
        with self._lock:
            self._sessions[session.loop_id] = session
        return session

    def get(self, loop_id: str) -> LoopSession:
        with self._lock:
            session = self._sessions.get(loop_id)
            if session is not None and self.clock() - session.last_used > self.timeout_s:
                del self._sessions[loop_id]
                session = None
            if session is None:
                raise ApiError(404, "NOT_FOUND", f"no loop session {loop_id!r}")
            session.last_used = self.clock()
            return session

    def update(self, loop_id: str, state: LoopState) -> LoopSession:
        with self._lock:
            session = self._sessions.get(loop_id)
            if session is None:
                raise ApiError(404, "NOT_FOUND", f"no loop session {loop_id!r}")
            session.state = state
            session.last_used = self.clock()
            return session
