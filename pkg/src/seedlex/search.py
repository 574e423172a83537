"""Exhaustive cosine-similarity scan over an embedding corpus.

The scan computes the cosine of a query against every occurrence embedding,
drops occurrences below ``min_sim``, then averages the survivors per word.
Ordering is total: score descending, ties broken by surviving count
descending, then token ascending, so repeated runs are byte-identical.

Precision policy: similarities are computed in double precision whenever
``num_occurrences * dim`` stays below ``_EXACT_ELEMS``; above that the dot
products run in single precision (the corpus stores f32) and only the
per-word averaging is done in float64. Small corpora therefore match a
naive double-precision recomputation to well under 1e-9.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .corpus import EmbeddingCorpus
from .errors import DimensionMismatchError, ZeroVectorError
from .validation import as_nonzero_vector, check_positive_int, check_range

_EXACT_ELEMS = 1 << 26
_CHUNK_ELEMS = 1 << 22


@dataclass(frozen=True)
class WordScore:
    """Ranked-output record: a word, its averaged similarity, and counts."""

    word: str
    score: float
    surviving: int
    total: int

    def to_dict(self) -> dict:
        return {"word": self.word, "score": self.score,
                "surviving": self.surviving, "total": self.total}

    @classmethod
    def from_dict(cls, obj) -> "WordScore":
        return cls(word=str(obj["word"]), score=float(obj["score"]),
                   surviving=int(obj["surviving"]), total=int(obj["total"]))


@dataclass(frozen=True)
class ScanConfig:
    """Scan parameters.

    ``min_sim`` follows the empirical 0.3 threshold; ``min_count`` drops rare
    noise tokens (set to 1 to scan every token); ``token_filter`` drops tokens
    without any alphabetic character; ``average_first`` switches to
    average-then-threshold semantics for sensitivity checks.
    """

    min_sim: float = 0.3
    min_count: int = 3
    exclude: frozenset[str] = field(default_factory=frozenset)
    token_filter: bool = True
    top_k: int | None = None
    average_first: bool = False

    def __post_init__(self):
        check_range(self.min_sim, -1.0, 1.0, "min_sim")
        check_positive_int(self.min_count, "min_count")
        if self.top_k is not None:
            check_positive_int(self.top_k, "top_k")
        object.__setattr__(self, "exclude", frozenset(self.exclude))

    def excluding(self, *words: str) -> "ScanConfig":
        return replace(self, exclude=self.exclude | set(words))


def cosine_similarity(a, b) -> float:
    """cos(a, b) = dot(a, b) / (|a||b|), clamped to [-1, 1]."""
    va = as_nonzero_vector(a, name="a")
    vb = as_nonzero_vector(b, name="b")
    if va.shape[0] != vb.shape[0]:
        raise DimensionMismatchError(
            f"vectors have dimensions {va.shape[0]} and {vb.shape[0]}"
        )
    # rescale so extreme magnitudes cannot under/overflow the norm product
    va = va / np.max(np.abs(va))
    vb = vb / np.max(np.abs(vb))
    value = float(np.dot(va, vb) / (np.linalg.norm(va) * np.linalg.norm(vb)))
    return max(-1.0, min(1.0, value))


def _occurrence_similarities(corpus: EmbeddingCorpus, query: np.ndarray) -> np.ndarray:
    emb = corpus._emb
    norms = corpus._norms
    qnorm = float(np.linalg.norm(query))
    n, dim = emb.shape
    if n == 0:
        return np.empty(0, dtype=np.float64)
    if n * dim <= _EXACT_ELEMS:
        sims = np.empty(n, dtype=np.float64)
        step = max(1, _CHUNK_ELEMS // dim)
        for lo in range(0, n, step):
            block = emb[lo:lo + step].astype(np.float64)
            sims[lo:lo + step] = block @ query
    else:
        sims = (emb @ query.astype(np.float32)).astype(np.float64)
    sims /= norms * qnorm
    np.clip(sims, -1.0, 1.0, out=sims)
    return sims


def scan(corpus: EmbeddingCorpus, query, config: ScanConfig = ScanConfig()) -> list[WordScore]:
    """Scan every occurrence in the corpus against ``query``.

    Returns one :class:`WordScore` per word with at least one occurrence at
    or above ``config.min_sim``, sorted by (score desc, surviving desc,
    token asc), truncated to ``config.top_k`` when set.
    """
    q = as_nonzero_vector(query, dim=corpus.dim, name="query")

    vocab_size = len(corpus._vocab)
    eligible = corpus._counts >= config.min_count
    if config.token_filter:
        eligible &= corpus._alpha_vocab_mask()
    for word in config.exclude:
        tid = corpus._token_id(word)
        if tid is not None:
            eligible[tid] = False
    if not eligible.any():
        return []

    sims = _occurrence_similarities(corpus, q)
    token_ids = corpus._token_ids
    occ_eligible = eligible[token_ids]

    if config.average_first:
        picked = occ_eligible
        counts = np.bincount(token_ids[picked], minlength=vocab_size)
        sums = np.bincount(token_ids[picked], weights=sims[picked], minlength=vocab_size)
        with np.errstate(invalid="ignore"):
            scores = np.where(counts > 0, sums / np.maximum(counts, 1), -np.inf)
        emit = (counts > 0) & (scores >= config.min_sim)
        surviving = counts
    else:
        picked = occ_eligible & (sims >= config.min_sim)
        counts = np.bincount(token_ids[picked], minlength=vocab_size)
        sums = np.bincount(token_ids[picked], weights=sims[picked], minlength=vocab_size)
        scores = sums / np.maximum(counts, 1)
        emit = counts > 0
        surviving = counts

    results = [
        WordScore(
            word=corpus._vocab[tid],
            score=float(min(1.0, scores[tid])),
            surviving=int(surviving[tid]),
            total=int(corpus._counts[tid]),
        )
        for tid in np.flatnonzero(emit)
    ]
    results.sort(key=lambda ws: (-ws.score, -ws.surviving, ws.word))
    if config.top_k is not None:
        results = results[:config.top_k]
    return results


def manual_search(corpus: EmbeddingCorpus, seed_word: str,
                  seed_doc_ids: Iterable[int] | None = None,
                  config: ScanConfig = ScanConfig()) -> list[WordScore]:
    """Seed-text search: average the seed's occurrences over the given
    documents (all containing documents when ``seed_doc_ids`` is None) and
    scan the corpus with that embedding. The seed never appears in its own
    results.
    """
    if seed_doc_ids is not None:
        seed = corpus.seed_embedding(seed_word, seed_doc_ids)
    else:
        seed = corpus.representative_embedding(seed_word)
    return scan(corpus, seed, config.excluding(seed_word))


# -- wire format ---------------------------------------------------------------


def scores_to_jsonl(scores: Sequence[WordScore]) -> str:
    return "".join(json.dumps(ws.to_dict(), ensure_ascii=False) + "\n" for ws in scores)


def scores_from_jsonl(text: str) -> list[WordScore]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            out.append(WordScore.from_dict(json.loads(line)))
    return out
