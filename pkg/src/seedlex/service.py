"""HTTP API over the engine: sessions, labels, reseed, snippets.

One engine, two frontends: the CLI and this service produce identical
outputs for identical inputs. Per-session mutations are serialized with a
lock; the corpus is shared read-only. Labels are flushed to the store
before the response is sent, so a restart loses no review work.
"""

from __future__ import annotations

import threading
from typing import Optional

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .corpus import EmbeddingCorpus
from .errors import (
    DimensionMismatchError,
    SeedlexError,
    SessionStateError,
    UnknownDocumentError,
    UnknownSessionError,
    UnknownWordError,
    ZeroVectorError,
)
from .expansion import ExpansionParams, ExpansionSession
from .search import ScanConfig
from .store import SessionStore


class SessionCreate(BaseModel):
    seed: str
    seed_doc_ids: Optional[list[int]] = None
    k: float = 0.3
    n: int = 5
    m: Optional[int] = None
    max_depth: int = 3
    min_sim: float = 0.3
    min_count: int = 3


class LabelRequest(BaseModel):
    word: str
    label: str


class ReseedRequest(BaseModel):
    # k optional so the workbench slider can retune exploration on reseed
    k: Optional[float] = None


def word_snippets(corpus: EmbeddingCorpus, word: str, limit: int | None = None) -> list[dict]:
    """Documents containing ``word`` with character offsets for highlighting.

    Wordpiece fragments are located by their surface without the ``##``
    prefix; the i-th occurrence of a token within a document maps to the
    i-th textual match. Offsets are null when the surface cannot be found.
    """
    occurrences = corpus.occurrences_of(word)
    if not occurrences:
        raise UnknownWordError(word)
    surface = word[2:] if word.startswith("##") else word
    fold = corpus.manifest.lowercased
    out: list[dict] = []
    nth_in_doc: dict[int, int] = {}
    for doc, _, _ in occurrences:
        if limit is not None and len(out) >= limit:
            break
        j = nth_in_doc.get(doc.id, 0)
        nth_in_doc[doc.id] = j + 1
        hay, needle = doc.text, surface
        if fold:
            lowered = doc.text.lower()
            if len(lowered) == len(doc.text):  # keep offsets valid
                hay, needle = lowered, surface.lower()
        start, search_from = -1, 0
        for _ in range(j + 1):
            start = hay.find(needle, search_from)
            if start < 0:
                break
            search_from = start + 1
        out.append({
            "doc_id": doc.id,
            "text": doc.text,
            "token_char_start": start if start >= 0 else None,
            "token_char_end": start + len(needle) if start >= 0 else None,
        })
    return out


class _Sessions:
    """Store-backed session cache with per-session write locks."""

    def __init__(self, store: SessionStore):
        self.store = store
        self._cache: dict[str, ExpansionSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def get(self, session_id: str) -> ExpansionSession:
        with self._guard:
            cached = self._cache.get(session_id)
        if cached is not None:
            return cached
        session, _ = self.store.load(session_id)
        with self._guard:
            return self._cache.setdefault(session_id, session)

    def add(self, session: ExpansionSession, parent_id: str | None = None) -> str:
        session_id = self.store.create(session, parent_id)
        with self._guard:
            self._cache[session_id] = session
        return session_id

    def flush(self, session_id: str, session: ExpansionSession) -> None:
        self.store.save(session_id, session)


def create_app(corpus: EmbeddingCorpus, store: SessionStore,
               static_dir=None) -> FastAPI:
    app = FastAPI(title="seedlex", version="0.1.0")
    sessions = _Sessions(store)
    app.state.corpus = corpus
    app.state.sessions = sessions

    @app.exception_handler(SeedlexError)
    async def _seedlex_error(request, exc: SeedlexError):
        if isinstance(exc, (UnknownWordError, UnknownSessionError, UnknownDocumentError)):
            status = 404
        elif isinstance(exc, SessionStateError):
            status = 409
        elif isinstance(exc, (DimensionMismatchError, ZeroVectorError)):
            status = 422
        else:
            status = 500
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request, exc: ValueError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        params = ExpansionParams(
            k=body.k, n=body.n, m=body.m, max_depth=body.max_depth,
            scan=ScanConfig(min_sim=body.min_sim, min_count=body.min_count),
        )
        session = ExpansionSession.start(corpus, body.seed, body.seed_doc_ids, params)
        session_id = sessions.add(session)
        return {"session_id": session_id}

    @app.post("/sessions/{session_id}/run")
    def run_session(session_id: str):
        session = sessions.get(session_id)
        with sessions.lock(session_id):
            session.run(corpus)
            sessions.flush(session_id, session)
        return {"status": session.status}

    @app.post("/sessions/{session_id}/step")
    def step_session(session_id: str):
        session = sessions.get(session_id)
        with sessions.lock(session_id):
            discovered = session.step(corpus)
            sessions.flush(session_id, session)
        return {"discovered": [ws.to_dict() for ws in discovered],
                "status": session.status}

    @app.get("/sessions/{session_id}/graph")
    def get_graph(session_id: str):
        return sessions.get(session_id).graph.to_json_obj()

    @app.get("/sessions/{session_id}/results")
    def get_results(session_id: str):
        session = sessions.get(session_id)
        return [ws.to_dict() for ws in session.rank_results(corpus)]

    @app.get("/sessions/{session_id}/labels")
    def get_labels(session_id: str):
        return dict(sorted(sessions.get(session_id).labels.items()))

    @app.post("/sessions/{session_id}/labels", status_code=204)
    def set_label(session_id: str, body: LabelRequest):
        session = sessions.get(session_id)
        with sessions.lock(session_id):
            session.set_label(body.word, body.label)
            sessions.flush(session_id, session)
        return Response(status_code=204)

    @app.post("/sessions/{session_id}/reseed")
    def reseed_session(session_id: str, body: ReseedRequest | None = None):
        session = sessions.get(session_id)
        body = body or ReseedRequest()
        with sessions.lock(session_id):
            accepted = session.accepted_words()
            child = session.reseed(accepted, corpus, k=body.k)
        new_id = sessions.add(child, parent_id=session_id)
        return {"new_session_id": new_id}

    @app.get("/words/{token}/snippets")
    def snippets(token: str, limit: int | None = None):
        return word_snippets(corpus, token, limit)

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
