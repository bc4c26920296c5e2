"""HTTP service: chat pipeline behind a bounded work queue, plus
read-only graph, analytics, and history endpoints."""

from .app import create_app
from .sessions import HistoryEntry, SessionStore
from .workqueue import WorkQueue

__all__ = ["create_app", "HistoryEntry", "SessionStore", "WorkQueue"]
