"""Chat sessions: append-only histories persisted as JSONL per session.

The first line of a session file is its metadata; every further line is one
history entry. Files are human-diffable and survive process restarts.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

SESSIONS_DIRNAME = "_sessions"


@dataclass
class Session:
    session_id: str
    db_id: str
    created_at: float
    history: list[dict] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    event_cond: threading.Condition = field(
        default_factory=threading.Condition, repr=False
    )
    in_flight: bool = False

    def add_event(self, stage: str, payload: dict) -> None:
        with self.event_cond:
            self.events.append({"stage": stage, **payload})
            self.event_cond.notify_all()


class SessionStore:
    """Threadsafe store with one JSONL file per session under the data root."""

    def __init__(self, data_root: str | Path):
        self.directory = Path(data_root) / SESSIONS_DIRNAME
        self.directory.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._load_existing()

    def _path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.jsonl"

    def _load_existing(self) -> None:
        for path in sorted(self.directory.glob("*.jsonl")):
            lines = path.read_text(encoding="utf-8").splitlines()
            if not lines:
                continue
            meta = json.loads(lines[0])
            session = Session(
                session_id=meta["session_id"],
                db_id=meta["db_id"],
                created_at=meta["created_at"],
                history=[json.loads(line) for line in lines[1:] if line.strip()],
            )
            self._sessions[session.session_id] = session

    def create(self, db_id: str) -> Session:
        session = Session(
            session_id=uuid.uuid4().hex,
            db_id=db_id,
            created_at=time.time(),
        )
        with self._lock:
            self._sessions[session.session_id] = session
        meta = {
            "session_id": session.session_id,
            "db_id": session.db_id,
            "created_at": session.created_at,
        }
        self._path(session.session_id).write_text(
            json.dumps(meta) + "\n", encoding="utf-8"
        )
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def append_history(self, session: Session, entry: dict) -> None:
        session.history.append(entry)
        with self._path(session.session_id).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry) + "\n")
