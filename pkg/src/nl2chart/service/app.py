"""HTTP front door: database management, chat sessions, batch-free queries.

The service never executes model-provided text as code; the only executable
surface is the in-process engine. Query requests within one session are
serialized so history order stays meaningful.
"""

from __future__ import annotations

import io
import json
import threading
import time
import zipfile
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from ..agents import ModelClient, client_from_spec, orchestrate
from ..agents.orchestrator import OrchestrationResult
from ..catalog import DatabaseCatalog, EmptyDatabase, load_database
from ..engine import spec_to_dict, table_to_dict
from ..vql import extract_sketch, print_vql
from .config import ServiceConfig
from .sessions import SESSIONS_DIRNAME, Session, SessionStore


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _trace_payload(result, processor) -> dict:
    attempts = [
        {"vql": a.vql_text, "parse_ok": a.parse_ok, "error": a.error}
        for a in result.trace.attempts
    ]
    sketch = None
    if result.trace.final is not None:
        sketch = extract_sketch(result.trace.final.query)
    payload = {
        "attempts": attempts,
        "iterations_used": result.trace.iterations_used,
        "sketch": sketch,
        "tokens_used": result.tokens_used,
    }
    if processor is not None:
        payload["filtered_schema"] = dict(processor.filtered_schema.entries)
        payload["classification"] = processor.classification.value
    return payload


class _CatalogCache:
    def __init__(self, root: Path):
        self.root = root
        self._cache: dict[str, DatabaseCatalog] = {}
        self._lock = threading.Lock()

    def ids(self) -> list[str]:
        return sorted(
            p.name
            for p in self.root.iterdir()
            if p.is_dir() and p.name != SESSIONS_DIRNAME and any(p.glob("*.csv"))
        )

    def get(self, db_id: str) -> DatabaseCatalog | None:
        with self._lock:
            if db_id in self._cache:
                return self._cache[db_id]
        path = self.root / db_id
        if not path.is_dir():
            return None
        try:
            catalog = load_database(path)
        except EmptyDatabase:
            return None
        with self._lock:
            self._cache[db_id] = catalog
        return catalog

    def invalidate(self, db_id: str) -> None:
        with self._lock:
            self._cache.pop(db_id, None)


def create_app(config: ServiceConfig, client: ModelClient | None = None) -> FastAPI:
    app = FastAPI(title="nl2chart", version="0.1.0")
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    catalogs = _CatalogCache(config.data_root)
    sessions = SessionStore(config.data_root)
    model = client if client is not None else client_from_spec(config.client_spec)
    inflight = threading.Semaphore(config.max_inflight)

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.get("/api/databases")
    def list_databases() -> dict:
        return {"databases": catalogs.ids()}

    @app.post("/api/databases")
    async def upload_database(request: Request, db_id: str):
        if not db_id or "/" in db_id or "\\" in db_id or db_id.startswith("."):
            return _error(400, "BAD_DB_ID", f"unusable db_id: {db_id!r}")
        body = await request.body()
        try:
            archive = zipfile.ZipFile(io.BytesIO(body))
        except zipfile.BadZipFile:
            return _error(400, "BAD_ARCHIVE", "body is not a zip archive")
        target = config.data_root / db_id
        members = []
        for info in archive.infolist():
            if info.is_dir():
                continue
            name = Path(info.filename).name
            if (
                info.filename.startswith(("/", "\\"))
                or ".." in Path(info.filename).parts
            ):
                return _error(
                    400, "BAD_ARCHIVE", f"path traversal in member {info.filename!r}"
                )
            if not (name.endswith(".csv") or name == "table_order.txt"):
                continue
            members.append((info, name))
        if not members:
            return _error(400, "BAD_ARCHIVE", "zip contains no CSV files")
        target.mkdir(parents=True, exist_ok=True)
        for info, name in members:
            (target / name).write_bytes(archive.read(info))
        catalogs.invalidate(db_id)
        catalog = catalogs.get(db_id)
        if catalog is None:
            return _error(400, "BAD_ARCHIVE", "unpacked archive is not loadable")
        return {"db_id": db_id, "tables": catalog.table_names()}

    @app.get("/api/databases/{db_id}/schema")
    def get_schema(db_id: str):
        catalog = catalogs.get(db_id)
        if catalog is None:
            return _error(404, "DB_NOT_FOUND", f"unknown database '{db_id}'")
        from ..catalog import render_description

        return {
            "db_id": catalog.db_id,
            "tables": [
                {
                    "name": t.name,
                    "columns": [
                        {
                            "name": c.name,
                            "type": c.inferred_type.value,
                            "examples": list(c.examples),
                        }
                        for c in t.columns
                    ],
                    "row_count": len(t.rows),
                }
                for t in catalog.tables
            ],
            "description": render_description(catalog),
        }

    @app.post("/api/sessions")
    async def create_session(request: Request):
        payload = await request.json()
        db_id = payload.get("db_id", "")
        if catalogs.get(db_id) is None:
            return _error(404, "DB_NOT_FOUND", f"unknown database '{db_id}'")
        session = sessions.create(db_id)
        return {
            "session_id": session.session_id,
            "db_id": session.db_id,
            "created_at": session.created_at,
        }

    @app.post("/api/sessions/{session_id}/query")
    async def run_query(session_id: str, request: Request):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "SESSION_NOT_FOUND", f"unknown session '{session_id}'")
        payload = await request.json()
        question = payload.get("q", "").strip()
        if not question:
            return _error(400, "EMPTY_QUERY", "the 'q' field must be non-empty")
        catalog = catalogs.get(session.db_id)
        if catalog is None:
            return _error(404, "DB_NOT_FOUND", f"unknown database '{session.db_id}'")

        def execute() -> dict:
            with session.lock:
                session.in_flight = True
                try:
                    result = orchestrate(
                        model,
                        catalog,
                        question,
                        max_iters=config.max_iters,
                        shot_count=config.shot_count,
                        on_event=session.add_event,
                    )
                finally:
                    session.in_flight = False
                    with session.event_cond:
                        session.event_cond.notify_all()
            if isinstance(result, OrchestrationResult):
                body = {
                    "vql": print_vql(result.trace.final.query),
                    "chart_spec": spec_to_dict(result.spec),
                    "data": table_to_dict(result.table),
                    "trace": _trace_payload(result, result.processor),
                }
            else:
                body = {
                    "failure": {
                        "last_error": result.last_error,
                        "trace": _trace_payload(result, result.processor),
                    }
                }
            entry = {"query": question, "result": body, "timestamp": time.time()}
            sessions.append_history(session, entry)
            return body

        import anyio

        acquired = inflight.acquire(blocking=False)
        if not acquired:
            return _error(429, "TOO_MANY_REQUESTS", "in-flight query cap reached")
        try:
            body = await anyio.to_thread.run_sync(execute)
        finally:
            inflight.release()
        return body

    @app.get("/api/sessions/{session_id}/history")
    def history(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "SESSION_NOT_FOUND", f"unknown session '{session_id}'")
        return {
            "session_id": session.session_id,
            "db_id": session.db_id,
            "history": session.history,
        }

    @app.get("/api/sessions/{session_id}/events")
    def events(session_id: str, after: int = 0, follow: int = 0):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "SESSION_NOT_FOUND", f"unknown session '{session_id}'")

        def stream():
            index = max(0, after)
            # grace period lets a tail opened just before the POST see it start
            grace = time.time() + 2.0 if follow else 0.0
            while True:
                with session.event_cond:
                    while index >= len(session.events):
                        waiting = follow and (
                            session.in_flight or time.time() < grace
                        )
                        if not waiting:
                            return
                        session.event_cond.wait(timeout=0.2)
                    batch = session.events[index:]
                    index = len(session.events)
                for event in batch:
                    stage = event.get("stage", "message")
                    data = json.dumps(event)
                    yield f"event: {stage}\ndata: {data}\n\n"

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app


def serve(config: ServiceConfig) -> None:  # pragma: no cover - process entry
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
