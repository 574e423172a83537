"""Standalone writer for the embedding-corpus directory format.

The format is the interchange boundary with the search engine, so it is
serialized here independently: manifest.json + documents.jsonl +
occurrences.bin (little-endian records: doc_id u32, token_index u16,
token_len u16, token utf-8, dim x f32).
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

_HEADER = struct.Struct("<IHH")


class CorpusWriter:
    def __init__(self, out_dir, dim: int, embedding_source: str, lowercased: bool):
        self.root = Path(out_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self.dim = dim
        self.embedding_source = embedding_source
        self.lowercased = lowercased
        self._docs_fh = (self.root / "documents.jsonl").open("w", encoding="utf-8")
        self._occ_fh = (self.root / "occurrences.bin").open("wb")
        self.num_documents = 0
        self.num_occurrences = 0
        self._closed = False

    def document(self, doc_id: int, text: str) -> None:
        if not text:
            raise ValueError(f"document {doc_id} has empty text")
        if not 0 <= doc_id < 2 ** 32:
            raise ValueError(f"document id {doc_id} out of u32 range")
        self._docs_fh.write(json.dumps({"id": int(doc_id), "text": text},
                                       ensure_ascii=False) + "\n")
        self.num_documents += 1

    def occurrence(self, doc_id: int, token_index: int, token: str, embedding) -> None:
        vec = np.asarray(embedding, dtype=np.float32)
        if vec.shape != (self.dim,):
            raise ValueError(
                f"embedding for {token!r} has shape {vec.shape}, expected ({self.dim},)"
            )
        if not np.isfinite(vec).all() or not np.any(vec):
            raise ValueError(f"degenerate embedding for token {token!r} in doc {doc_id}")
        raw = token.encode("utf-8")
        self._occ_fh.write(_HEADER.pack(int(doc_id), int(token_index), len(raw)))
        self._occ_fh.write(raw)
        self._occ_fh.write(vec.tobytes())
        self.num_occurrences += 1

    def finish(self) -> Path:
        if self._closed:
            return self.root
        self._docs_fh.close()
        self._occ_fh.close()
        manifest = {
            "version": 1,
            "dim": self.dim,
            "num_documents": self.num_documents,
            "num_occurrences": self.num_occurrences,
            "embedding_source": self.embedding_source,
            "lowercased": self.lowercased,
            "occurrence_format": "binary",
        }
        (self.root / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        self._closed = True
        return self.root

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.finish()
        else:
            self._docs_fh.close()
            self._occ_fh.close()
