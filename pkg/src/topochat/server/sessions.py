"""In-memory per-session chat history."""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass


@dataclass(frozen=True)
class HistoryEntry:
    question: str
    answer_text: str
    trace_id: str
    timestamp: float


class SessionStore:
    """Append-only history per session id; oldest entries evicted past
    the limit.  A session exists once it has been ensured or appended
    to; history() returns None for ids never seen."""

    def __init__(self, limit: int = 100):
        if limit < 1:
            raise ValueError("limit must be positive")
        self._limit = limit
        self._lock = threading.Lock()
        self._sessions: dict[str, deque] = {}

    def ensure(self, session_id: str) -> None:
        if not session_id:
            raise ValueError("session id must be non-empty")
        with self._lock:
            self._sessions.setdefault(session_id, deque(maxlen=self._limit))

    def append(self, session_id: str, entry: HistoryEntry) -> None:
        if not session_id:
            raise ValueError("session id must be non-empty")
        with self._lock:
            bucket = self._sessions.setdefault(session_id, deque(maxlen=self._limit))
            bucket.append(entry)

    def history(self, session_id: str):
        with self._lock:
            bucket = self._sessions.get(session_id)
            return None if bucket is None else list(bucket)

    def __contains__(self, session_id: str) -> bool:
        with self._lock:
            return session_id in self._sessions

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)
