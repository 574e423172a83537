"""Scikit-learn style estimators over the engine.

Both estimators follow the sklearn contract (all configuration in
``__init__``, data in ``fit``, learned state in trailing-underscore
attributes, ``get_params``/``set_params`` inherited) so parameter sweeps
over the blend weight compose with the wider ecosystem. ``fit`` takes an
:class:`~seedlex.corpus.EmbeddingCorpus` as its X.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .corpus import EmbeddingCorpus
from .expansion import ExpansionParams, ExpansionSession
from .search import ScanConfig, cosine_similarity, manual_search


def _check_corpus(X) -> EmbeddingCorpus:
    if not isinstance(X, EmbeddingCorpus):
        raise TypeError(f"X must be an EmbeddingCorpus, got {type(X).__name__}")
    return X


class ManualLexiconSearch(BaseEstimator):
    """Rank corpus words by similarity to a seed word's averaged embedding.

    Attributes after ``fit``: ``ranking_`` (list of WordScore),
    ``seed_embedding_`` (the query vector used).
    """

    def __init__(self, seed_word="", seed_doc_ids=None, min_sim=0.3, min_count=3,
                 top_k=None, exclude=()):
        self.seed_word = seed_word
        self.seed_doc_ids = seed_doc_ids
        self.min_sim = min_sim
        self.min_count = min_count
        self.top_k = top_k
        self.exclude = exclude

    def fit(self, X, y=None):
        corpus = _check_corpus(X)
        if self.seed_doc_ids is not None:
            self.seed_embedding_ = corpus.seed_embedding(self.seed_word, self.seed_doc_ids)
        else:
            self.seed_embedding_ = corpus.representative_embedding(self.seed_word)
        config = ScanConfig(min_sim=self.min_sim, min_count=self.min_count,
                            top_k=self.top_k, exclude=frozenset(self.exclude))
        self.ranking_ = manual_search(corpus, self.seed_word, self.seed_doc_ids, config)
        self.corpus_ = corpus
        return self

    def transform(self, words):
        """Cosine similarity of each word's representative embedding to the
        seed embedding."""
        return np.array([
            cosine_similarity(self.corpus_.representative_embedding(w), self.seed_embedding_)
            for w in words
        ])


class GraphLexiconExpander(BaseEstimator):
    """Iterative graph expansion from a seed word.

    Attributes after ``fit``: ``session_``, ``graph_``, ``ranking_``,
    ``context_embedding_`` (the final context vector).
    """

    def __init__(self, seed_word="", seed_doc_ids=None, k=0.3, n=5, m=None,
                 max_depth=3, min_sim=0.3, min_count=3):
        self.seed_word = seed_word
        self.seed_doc_ids = seed_doc_ids
        self.k = k
        self.n = n
        self.m = m
        self.max_depth = max_depth
        self.min_sim = min_sim
        self.min_count = min_count

    def fit(self, X, y=None):
        corpus = _check_corpus(X)
        params = ExpansionParams(
            k=self.k, n=self.n, m=self.m, max_depth=self.max_depth,
            scan=ScanConfig(min_sim=self.min_sim, min_count=self.min_count),
        )
        session = ExpansionSession.start(corpus, self.seed_word,
                                         self.seed_doc_ids, params)
        self.graph_, self.ranking_ = session.run(corpus)
        self.session_ = session
        self.context_embedding_ = session.cemb.copy()
        self.corpus_ = corpus
        return self

    def transform(self, words):
        """Cosine similarity of each word's representative embedding to the
        learned context embedding."""
        return np.array([
            cosine_similarity(self.corpus_.representative_embedding(w),
                              self.context_embedding_)
            for w in words
        ])
