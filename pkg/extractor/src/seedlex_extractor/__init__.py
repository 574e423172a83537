"""Embedding-corpus extraction: MLM fine-tuning + per-token hidden states."""

from .config import ExtractionConfig
from .extract import ExtractionReport, extract_corpus, load_model_and_tokenizer, load_texts
from .finetune import finetune
from .writer import CorpusWriter

__version__ = "0.1.0"

__all__ = [
    "ExtractionConfig", "ExtractionReport", "extract_corpus",
    "load_model_and_tokenizer", "load_texts", "finetune", "CorpusWriter",
    "__version__",
]
