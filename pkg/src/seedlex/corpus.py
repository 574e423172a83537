"""Embedding corpus: on-disk format, validated loading, representative embeddings.

A corpus directory holds three files:

* ``manifest.json``    -- corpus metadata (see :class:`CorpusManifest`)
* ``documents.jsonl``  -- one ``{"id": <uint>, "text": <str>}`` object per line
* ``occurrences.bin``  -- repeated little-endian records:
  ``doc_id u32, token_index u16, token_len u16, token_len utf-8 bytes, dim x f32``
  (or ``occurrences.jsonl`` with ``{"doc", "pos", "token", "emb"}`` objects as a
  debug/interchange form; jsonl embeddings are cast to f32 on load so both
  formats index identically)

The loaded index is immutable: any number of readers may share it.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CorpusFormatError,
    DimensionMismatchError,
    UnknownDocumentError,
    UnknownWordError,
)

MANIFEST_NAME = "manifest.json"
DOCUMENTS_NAME = "documents.jsonl"
BINARY_NAME = "occurrences.bin"
JSONL_NAME = "occurrences.jsonl"

_FORMATS = ("binary", "jsonl")
_HEADER = struct.Struct("<IHH")
_MAX_DOC_ID = 2**32 - 1
_MAX_POSITION = 2**16 - 1


@dataclass(frozen=True)
class CorpusManifest:
    version: int
    dim: int
    num_documents: int
    num_occurrences: int
    embedding_source: str
    lowercased: bool
    occurrence_format: str

    def __post_init__(self):
        if self.version != 1:
            raise CorpusFormatError(f"unsupported manifest version {self.version}")
        if self.dim < 1:
            raise CorpusFormatError(f"dim must be >= 1, got {self.dim}")
        if self.num_documents < 0 or self.num_occurrences < 0:
            raise CorpusFormatError("counts must be non-negative")
        if self.occurrence_format not in _FORMATS:
            raise CorpusFormatError(
                f"occurrence_format must be one of {_FORMATS}, got {self.occurrence_format!r}"
            )

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "dim": self.dim,
            "num_documents": self.num_documents,
            "num_occurrences": self.num_occurrences,
            "embedding_source": self.embedding_source,
            "lowercased": self.lowercased,
            "occurrence_format": self.occurrence_format,
        }

    @classmethod
    def from_dict(cls, obj: Mapping, source=None) -> "CorpusManifest":
        try:
            return cls(
                version=int(obj["version"]),
                dim=int(obj["dim"]),
                num_documents=int(obj["num_documents"]),
                num_occurrences=int(obj["num_occurrences"]),
                embedding_source=str(obj["embedding_source"]),
                lowercased=bool(obj["lowercased"]),
                occurrence_format=str(obj["occurrence_format"]),
            )
        except KeyError as exc:
            raise CorpusFormatError(f"manifest missing field {exc.args[0]!r}", source=source)


@dataclass(frozen=True)
class Document:
    id: int
    text: str


@dataclass(frozen=True)
class TokenOccurrence:
    """One token occurrence; wordpiece fragments keep their ``##`` prefix."""

    doc_id: int
    token_index: int
    token: str
    embedding: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, TokenOccurrence):
            return NotImplemented
        return (
            self.doc_id == other.doc_id
            and self.token_index == other.token_index
            and self.token == other.token
            and np.array_equal(self.embedding, other.embedding)
        )


class EmbeddingCorpus:
    """Immutable index from token string to all its embedded occurrences.

    Occurrence data is held column-wise (numpy arrays) so similarity scans
    stay vectorized; per-token occurrence lists are ordered by
    ``(doc_id, token_index)``.
    """

    def __init__(self, manifest, documents, doc_order, emb, doc_ids, positions,
                 tokens, vocab, token_ids, _internal=False):
        if not _internal:
            raise TypeError("use load_corpus() or EmbeddingCorpus.build()")
        self._manifest = manifest
        self._documents = documents            # id -> Document
        self._doc_order = doc_order            # ids in file order (for reserialization)
        self._emb = emb                        # (N, dim) float32, file order
        self._doc_ids = doc_ids                # (N,) uint32
        self._positions = positions            # (N,) uint16
        self._tokens = tokens                  # list[str], file order
        self._vocab = vocab                    # list[str], first-seen order
        self._token_ids = token_ids            # (N,) int32 into vocab
        self._vocab_index = {tok: i for i, tok in enumerate(vocab)}
        counts = np.bincount(token_ids, minlength=len(vocab)).astype(np.int64)
        self._counts = counts
        self.vocab_counts = {tok: int(counts[i]) for i, tok in enumerate(vocab)}
        # occurrence rows per token, sorted by (doc_id, token_index)
        order = np.lexsort((positions, doc_ids, token_ids))
        bounds = np.searchsorted(token_ids[order], np.arange(len(vocab) + 1))
        self._rows_by_token = [order[bounds[i]:bounds[i + 1]] for i in range(len(vocab))]
        self._norms = _row_norms(emb)
        self._rep_cache: dict[int, np.ndarray] = {}
        self._alpha_mask: np.ndarray | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def manifest(self) -> CorpusManifest:
        return self._manifest

    @property
    def dim(self) -> int:
        return self._manifest.dim

    @property
    def num_occurrences(self) -> int:
        return len(self._tokens)

    @property
    def documents(self) -> Mapping[int, Document]:
        return self._documents

    @property
    def vocab(self) -> Sequence[str]:
        return tuple(self._vocab)

    def __contains__(self, word: str) -> bool:
        return word in self._vocab_index

    def count(self, word: str) -> int:
        return self.vocab_counts.get(word, 0)

    # -- embeddings ---------------------------------------------------------

    def representative_embedding(self, word: str) -> np.ndarray:
        """Arithmetic mean of all occurrence embeddings of ``word`` (float64)."""
        tid = self._vocab_index.get(word)
        if tid is None:
            raise UnknownWordError(word)
        cached = self._rep_cache.get(tid)
        if cached is None:
            rows = self._rows_by_token[tid]
            cached = self._emb[rows].astype(np.float64).sum(axis=0) / len(rows)
            self._rep_cache[tid] = cached
        return cached.copy()

    def seed_embedding(self, word: str, doc_ids: Iterable[int]) -> np.ndarray:
        """Mean of ``word``'s occurrences restricted to ``doc_ids``.

        A document with two occurrences contributes both.
        """
        doc_list = list(doc_ids)
        if not doc_list:
            raise ValueError("doc_ids must not be empty")
        tid = self._vocab_index.get(word)
        if tid is None:
            raise UnknownWordError(word)
        rows = self._rows_by_token[tid]
        row_docs = self._doc_ids[rows]
        wanted = set()
        for doc_id in doc_list:
            if doc_id not in self._documents:
                raise UnknownDocumentError(doc_id)
            if not np.any(row_docs == doc_id):
                raise UnknownDocumentError(
                    doc_id, f"document {doc_id} contains no occurrence of {word!r}"
                )
            wanted.add(doc_id)
        mask = np.isin(row_docs, np.array(sorted(wanted), dtype=np.uint32))
        picked = rows[mask]
        return self._emb[picked].astype(np.float64).sum(axis=0) / len(picked)

    def occurrences_of(self, word: str) -> list[tuple[Document, int, TokenOccurrence]]:
        """All occurrences of ``word`` ordered by (doc_id, token_index); [] if unknown."""
        tid = self._vocab_index.get(word)
        if tid is None:
            return []
        out = []
        for row in self._rows_by_token[tid]:
            doc = self._documents[int(self._doc_ids[row])]
            pos = int(self._positions[row])
            occ = TokenOccurrence(doc.id, pos, self._tokens[row], self._emb[row].copy())
            out.append((doc, pos, occ))
        return out

    # -- internals used by the scan ------------------------------------------

    def _token_id(self, word: str):
        return self._vocab_index.get(word)

    def _alpha_vocab_mask(self) -> np.ndarray:
        if self._alpha_mask is None:
            self._alpha_mask = np.fromiter(
                (any(ch.isalpha() for ch in tok) for tok in self._vocab),
                dtype=bool,
                count=len(self._vocab),
            )
        return self._alpha_mask

    # -- construction ----------------------------------------------------------

    @classmethod
    def build(cls, documents: Iterable[tuple[int, str]],
              occurrences: Iterable[tuple[int, int, str, Sequence[float]]],
              dim: int, embedding_source: str = "unspecified",
              lowercased: bool = True, occurrence_format: str = "binary") -> "EmbeddingCorpus":
        """Assemble and validate a corpus from in-memory records.

        ``documents`` yields ``(id, text)``; ``occurrences`` yields
        ``(doc_id, token_index, token, embedding)``.
        """
        docs = [(int(i), str(t)) for i, t in documents]
        occs = list(occurrences)
        n = len(occs)
        emb = np.empty((n, dim), dtype=np.float32)
        doc_ids = np.empty(n, dtype=np.uint32)
        positions = np.empty(n, dtype=np.uint16)
        tokens: list[str] = []
        for i, (doc_id, pos, token, vec) in enumerate(occs):
            if not 0 <= doc_id <= _MAX_DOC_ID:
                raise CorpusFormatError(f"record {i}: doc_id {doc_id} out of u32 range")
            if not 0 <= pos <= _MAX_POSITION:
                raise CorpusFormatError(f"record {i}: token_index {pos} out of u16 range")
            if not token:
                raise CorpusFormatError(f"record {i}: empty token")
            arr = np.asarray(vec, dtype=np.float32)
            if arr.shape != (dim,):
                raise DimensionMismatchError(
                    f"record {i}: embedding has {arr.shape[0] if arr.ndim == 1 else arr.shape} "
                    f"components, expected {dim}"
                )
            emb[i] = arr
            doc_ids[i] = doc_id
            positions[i] = pos
            tokens.append(token)
        manifest = CorpusManifest(
            version=1, dim=dim, num_documents=len(docs), num_occurrences=n,
            embedding_source=embedding_source, lowercased=lowercased,
            occurrence_format=occurrence_format,
        )
        return _assemble(manifest, docs, emb, doc_ids, positions, tokens,
                         locate=lambda i: f"record {i}")


def _row_norms(emb: np.ndarray) -> np.ndarray:
    # chunked so the float64 temporary stays small on big corpora
    n = len(emb)
    out = np.empty(n, dtype=np.float64)
    step = max(1, (1 << 24) // max(1, emb.shape[1]))
    for lo in range(0, n, step):
        block = emb[lo:lo + step].astype(np.float64)
        out[lo:lo + step] = np.sqrt(np.einsum("ij,ij->i", block, block))
    return out


def _assemble(manifest: CorpusManifest, docs: list[tuple[int, str]], emb, doc_ids,
              positions, tokens, locate: Callable[[int], str], source=None) -> EmbeddingCorpus:
    """Shared validation for every construction path (binary, jsonl, in-memory)."""
    seen: dict[int, str] = {}
    for doc_id, text in docs:
        if doc_id in seen:
            raise CorpusFormatError(f"duplicate document id {doc_id}", source=source)
        if not text:
            raise CorpusFormatError(f"document {doc_id} has empty text", source=source)
        seen[doc_id] = text
    documents = {doc_id: Document(doc_id, text) for doc_id, text in docs}

    n = len(tokens)
    if manifest.num_documents != len(docs):
        raise CorpusFormatError(
            f"manifest says {manifest.num_documents} documents, found {len(docs)}",
            source=source,
        )
    if manifest.num_occurrences != n:
        raise CorpusFormatError(
            f"manifest says {manifest.num_occurrences} occurrences, found {n}",
            source=source,
        )

    if n:
        # chunked so validation temporaries stay small on 1M-row corpora
        step = max(1, (1 << 24) // emb.shape[1])
        for lo in range(0, n, step):
            row_ok = np.isfinite(emb[lo:lo + step]).all(axis=1)
            if not row_ok.all():
                i = lo + int(np.argmin(row_ok))
                raise CorpusFormatError(
                    f"{locate(i)}: embedding has non-finite components", source=source
                )
        known = np.array(sorted(documents), dtype=np.uint64)
        ok = np.isin(doc_ids.astype(np.uint64), known)
        if not ok.all():
            i = int(np.argmin(ok))
            raise CorpusFormatError(
                f"{locate(i)}: doc_id {int(doc_ids[i])} refers to no document",
                source=source,
            )

    vocab: list[str] = []
    vocab_index: dict[str, int] = {}
    token_ids = np.empty(n, dtype=np.int32)
    for i, tok in enumerate(tokens):
        tid = vocab_index.get(tok)
        if tid is None:
            tid = len(vocab)
            vocab_index[tok] = tid
            vocab.append(tok)
        token_ids[i] = tid

    corpus = EmbeddingCorpus(
        manifest, documents, [d for d, _ in docs], emb, doc_ids, positions,
        tokens, vocab, token_ids, _internal=True,
    )
    if n and not (corpus._norms > 0.0).all():
        i = int(np.argmin(corpus._norms > 0.0))
        raise CorpusFormatError(
            f"{locate(i)}: zero-norm embedding (cosine undefined)", source=source
        )
    return corpus


# -- loading -------------------------------------------------------------------


def load_corpus(path) -> EmbeddingCorpus:
    """Load and fully validate a corpus directory."""
    root = Path(path)
    manifest_path = root / MANIFEST_NAME
    if not manifest_path.is_file():
        raise CorpusFormatError("missing manifest.json", source=root)
    try:
        manifest_obj = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"invalid JSON: {exc}", source=manifest_path)
    manifest = CorpusManifest.from_dict(manifest_obj, source=manifest_path)

    docs_path = root / DOCUMENTS_NAME
    if not docs_path.is_file():
        raise CorpusFormatError("missing documents.jsonl", source=root)
    docs = _read_documents(docs_path)

    if manifest.occurrence_format == "binary":
        occ_path = root / BINARY_NAME
        if not occ_path.is_file():
            raise CorpusFormatError("missing occurrences.bin", source=root)
        emb, doc_ids, positions, tokens, offsets = _read_binary(occ_path, manifest)
        locate = lambda i: f"byte offset {int(offsets[i])}"  # noqa: E731
        source = occ_path
    else:
        occ_path = root / JSONL_NAME
        if not occ_path.is_file():
            raise CorpusFormatError("missing occurrences.jsonl", source=root)
        emb, doc_ids, positions, tokens, lines = _read_jsonl(occ_path, manifest)
        locate = lambda i: f"line {int(lines[i])}"  # noqa: E731
        source = occ_path

    return _assemble(manifest, docs, emb, doc_ids, positions, tokens, locate, source=source)


def _read_documents(path: Path) -> list[tuple[int, str]]:
    docs = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"invalid JSON: {exc}", source=path,
                                        location=f"line {lineno}")
            if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
                raise CorpusFormatError("document object needs 'id' and 'text'",
                                        source=path, location=f"line {lineno}")
            doc_id = obj["id"]
            if not isinstance(doc_id, int) or not 0 <= doc_id <= _MAX_DOC_ID:
                raise CorpusFormatError(f"document id {doc_id!r} out of u32 range",
                                        source=path, location=f"line {lineno}")
            docs.append((doc_id, str(obj["text"])))
    return docs


def _read_binary(path: Path, manifest: CorpusManifest):
    dim = manifest.dim
    emb_bytes = dim * 4
    n_expected = manifest.num_occurrences
    emb = np.empty((n_expected, dim), dtype=np.float32)
    doc_ids = np.empty(n_expected, dtype=np.uint32)
    positions = np.empty(n_expected, dtype=np.uint16)
    offsets = np.empty(n_expected, dtype=np.int64)
    tokens: list[str] = []

    def fail(offset, message):
        raise CorpusFormatError(message, source=path, location=f"byte offset {offset}")

    i = 0
    base = 0          # file offset of buf[0]
    buf = b""
    pos = 0
    with path.open("rb") as fh:
        while True:
            # top up the buffer so at least one full record is available
            if len(buf) - pos < _HEADER.size:
                buf = buf[pos:] + fh.read(1 << 24)
                base += pos
                pos = 0
                if not buf:
                    break
                if len(buf) < _HEADER.size:
                    fail(base + pos, "truncated record header")
            doc_id, token_index, token_len = _HEADER.unpack_from(buf, pos)
            record_len = _HEADER.size + token_len + emb_bytes
            if len(buf) - pos < record_len:
                more = fh.read(max(1 << 24, record_len))
                buf = buf[pos:] + more
                base += pos
                pos = 0
                if len(buf) < record_len:
                    fail(base, "truncated record")
            if i >= n_expected:
                fail(base + pos, f"more than {n_expected} records (manifest num_occurrences)")
            if token_len == 0:
                fail(base + pos, "empty token")
            start = pos + _HEADER.size
            try:
                token = buf[start:start + token_len].decode("utf-8")
            except UnicodeDecodeError:
                fail(base + pos, "token is not valid UTF-8")
            emb[i] = np.frombuffer(buf, dtype="<f4", count=dim, offset=start + token_len)
            doc_ids[i] = doc_id
            positions[i] = token_index
            offsets[i] = base + pos
            tokens.append(token)
            pos += record_len
            i += 1
    if i != n_expected:
        raise CorpusFormatError(
            f"manifest says {n_expected} occurrences, file holds {i}", source=path
        )
    return emb, doc_ids, positions, tokens, offsets


def _read_jsonl(path: Path, manifest: CorpusManifest):
    dim = manifest.dim
    emb_rows = []
    doc_ids = []
    positions = []
    tokens = []
    lines = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue

            def fail(message):
                raise CorpusFormatError(message, source=path, location=f"line {lineno}")

            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                fail(f"invalid JSON: {exc}")
            for key in ("doc", "pos", "token", "emb"):
                if key not in obj:
                    fail(f"occurrence object missing {key!r}")
            vec = obj["emb"]
            if not isinstance(vec, list) or len(vec) != dim:
                fail(f"embedding has {len(vec) if isinstance(vec, list) else '?'} "
                     f"components, expected {dim}")
            doc_id, pos = obj["doc"], obj["pos"]
            if not isinstance(doc_id, int) or not 0 <= doc_id <= _MAX_DOC_ID:
                fail(f"doc id {doc_id!r} out of u32 range")
            if not isinstance(pos, int) or not 0 <= pos <= _MAX_POSITION:
                fail(f"token_index {pos!r} out of u16 range")
            if not obj["token"]:
                fail("empty token")
            try:
                row = np.asarray(vec, dtype=np.float32)
            except (TypeError, ValueError):
                fail("embedding has non-numeric components")
            emb_rows.append(row)
            doc_ids.append(doc_id)
            positions.append(pos)
            tokens.append(str(obj["token"]))
            lines.append(lineno)
    n = len(tokens)
    emb = np.vstack(emb_rows).astype(np.float32) if n else np.empty((0, dim), np.float32)
    return (
        emb,
        np.asarray(doc_ids, dtype=np.uint32) if n else np.empty(0, np.uint32),
        np.asarray(positions, dtype=np.uint16) if n else np.empty(0, np.uint16),
        tokens,
        np.asarray(lines, dtype=np.int64) if n else np.empty(0, np.int64),
    )


# -- saving -------------------------------------------------------------------


def save_corpus(corpus: EmbeddingCorpus, path, occurrence_format: str | None = None) -> Path:
    """Write a corpus directory; binary round-trips are bit-exact.

    Records are emitted in original load order.
    """
    fmt = occurrence_format or corpus.manifest.occurrence_format
    if fmt not in _FORMATS:
        raise ValueError(f"occurrence_format must be one of {_FORMATS}, got {fmt!r}")
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    manifest = CorpusManifest.from_dict({**corpus.manifest.to_dict(), "occurrence_format": fmt})
    (root / MANIFEST_NAME).write_text(
        json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    with (root / DOCUMENTS_NAME).open("w", encoding="utf-8") as fh:
        for doc_id in corpus._doc_order:
            doc = corpus.documents[doc_id]
            fh.write(json.dumps({"id": doc.id, "text": doc.text}, ensure_ascii=False) + "\n")

    emb = corpus._emb
    doc_ids = corpus._doc_ids
    positions = corpus._positions
    tokens = corpus._tokens
    if fmt == "binary":
        with (root / BINARY_NAME).open("wb") as fh:
            for i in range(len(tokens)):
                raw = tokens[i].encode("utf-8")
                fh.write(_HEADER.pack(int(doc_ids[i]), int(positions[i]), len(raw)))
                fh.write(raw)
                fh.write(emb[i].tobytes())
        stale = root / JSONL_NAME
    else:
        with (root / JSONL_NAME).open("w", encoding="utf-8") as fh:
            for i in range(len(tokens)):
                fh.write(json.dumps({
                    "doc": int(doc_ids[i]),
                    "pos": int(positions[i]),
                    "token": tokens[i],
                    "emb": [float(x) for x in emb[i]],
                }, ensure_ascii=False) + "\n")
        stale = root / BINARY_NAME
    if stale.exists():
        stale.unlink()
    return root
