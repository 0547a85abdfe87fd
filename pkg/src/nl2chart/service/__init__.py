"""HTTP service and session persistence."""

from .app import create_app, serve
from .config import ServiceConfig
from .sessions import SESSIONS_DIRNAME, Session, SessionStore

__all__ = [
    "SESSIONS_DIRNAME",
    "ServiceConfig",
    "Session",
    "SessionStore",
    "create_app",
    "serve",
]
