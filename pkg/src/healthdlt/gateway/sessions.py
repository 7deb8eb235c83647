"""Gateway sessions: random 128-bit tokens with idle expiry."""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

from ..errors import SessionExpired
from ..identity import HealthCard

DEFAULT_IDLE_MS = 30 * 60 * 1000


@dataclass
class Session:
    token: str
    card: HealthCard
    last_used: float  # monotonic seconds


class SessionRegistry:
    def __init__(self, idle_ms: int = DEFAULT_IDLE_MS):
        self.idle_s = idle_ms / 1000.0
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, token: str, card: HealthCard) -> Session:
        session = Session(token=token, card=card, last_used=time.monotonic())
        with self._lock:
            self._sessions[token] = session
        return session

    def resolve(self, token: str | None) -> HealthCard:
        """Return the session's card, refreshing the idle clock."""
        if not token:
            raise SessionExpired("missing session token")
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                raise SessionExpired("unknown session token")
            now = time.monotonic()
            if now - session.last_used > self.idle_s:
                del self._sessions[token]
                raise SessionExpired("session idle past expiry")
            session.last_used = now
            return session.card

    def drop(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)
