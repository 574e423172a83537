"""Whole-snapshot session persistence.

Each session is one JSON file in the store root, written atomically on every
mutation (sessions stay small; simplicity beats incremental logs). The
envelope records a sha256 over the canonical history so a reloaded session
is verified against what was persisted.
"""

from __future__ import annotations

import hashlib
import json
import os
import uuid
from pathlib import Path

from .errors import CorpusFormatError, UnknownSessionError
from .expansion import ExpansionSession, canonical_json


class SessionStore:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def create(self, session: ExpansionSession, parent_id: str | None = None) -> str:
        session_id = uuid.uuid4().hex
        self.save(session_id, session, parent_id)
        return session_id

    def save(self, session_id: str, session: ExpansionSession,
             parent_id: str | None = None) -> None:
        if parent_id is None and self._path(session_id).exists():
            parent_id = self._read_envelope(session_id).get("parent_id")
        envelope = {
            "session_id": session_id,
            "parent_id": parent_id,
            "replay_hash": session.replay_hash(),
            "snapshot": session.snapshot(),
        }
        target = self._path(session_id)
        tmp = target.with_suffix(".tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            fh.write(canonical_json(envelope))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, target)

    def _read_envelope(self, session_id: str) -> dict:
        path = self._path(session_id)
        if not path.is_file():
            raise UnknownSessionError(session_id)
        return json.loads(path.read_text(encoding="utf-8"))

    def load(self, session_id: str) -> tuple[ExpansionSession, str | None]:
        envelope = self._read_envelope(session_id)
        session = ExpansionSession.from_snapshot(envelope["snapshot"])
        recomputed = hashlib.sha256(
            canonical_json(envelope["snapshot"]["history"]).encode("utf-8")
        ).hexdigest()
        if recomputed != envelope.get("replay_hash"):
            raise CorpusFormatError(
                "session file is corrupt: replay hash does not match history",
                source=self._path(session_id),
            )
        assert session.replay_hash() == recomputed
        return session, envelope.get("parent_id")

    def ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def __contains__(self, session_id: str) -> bool:
        return self._path(session_id).is_file()
