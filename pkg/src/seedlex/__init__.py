"""seedlex: seed-word lexicon induction over contextual token embeddings.

Given one seed word (and optionally a few seed texts), discover other words
used in the same context across an embedding-annotated corpus, either by a
single exhaustive cosine scan (:func:`manual_search`) or by graph-based
iterative expansion (:class:`ExpansionSession`,
:class:`~seedlex.estimators.GraphLexiconExpander`).
"""

from .corpus import (
    CorpusManifest,
    Document,
    EmbeddingCorpus,
    TokenOccurrence,
    load_corpus,
    save_corpus,
)
from .errors import (
    CorpusFormatError,
    DimensionMismatchError,
    SeedlexError,
    SessionStateError,
    UnknownDocumentError,
    UnknownSessionError,
    UnknownWordError,
    ZeroVectorError,
)
from .estimators import GraphLexiconExpander, ManualLexiconSearch
from .evaluation import (
    GoldSet,
    PrecisionReport,
    PrecisionRow,
    evaluate,
    load_gold,
    precision_at,
    precision_at_detail,
    save_gold,
)
from .expansion import (
    ExpansionParams,
    ExpansionSession,
    GraphEdge,
    GraphNode,
    WordGraph,
    replay_session,
)
from .search import (
    ScanConfig,
    WordScore,
    cosine_similarity,
    manual_search,
    scan,
    scores_from_jsonl,
    scores_to_jsonl,
)
from .store import SessionStore

__version__ = "0.1.0"

__all__ = [
    "CorpusManifest", "Document", "EmbeddingCorpus", "TokenOccurrence",
    "load_corpus", "save_corpus",
    "SeedlexError", "CorpusFormatError", "UnknownWordError",
    "UnknownDocumentError", "UnknownSessionError", "DimensionMismatchError",
    "ZeroVectorError", "SessionStateError",
    "ScanConfig", "WordScore", "cosine_similarity", "scan", "manual_search",
    "scores_to_jsonl", "scores_from_jsonl",
    "ExpansionParams", "ExpansionSession", "WordGraph", "GraphNode",
    "GraphEdge", "replay_session",
    "GoldSet", "PrecisionReport", "PrecisionRow", "precision_at",
    "precision_at_detail", "evaluate", "load_gold", "save_gold",
    "SessionStore",
    "ManualLexiconSearch", "GraphLexiconExpander",
    "__version__",
]
