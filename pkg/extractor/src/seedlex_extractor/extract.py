"""Per-token embedding extraction: sum of the last N hidden layers.

Each non-special wordpiece of every input text becomes one occurrence;
its embedding is the component-wise sum of the last ``layers_to_sum``
hidden states at that position. Over-length texts are truncated at
``max_sequence_length`` and counted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from .config import ExtractionConfig
from .writer import CorpusWriter


@dataclass
class ExtractionReport:
    corpus_dir: Path
    num_documents: int
    num_occurrences: int
    truncated_documents: int


def load_texts(path) -> list[tuple[int, str]]:
    """Read texts.jsonl ({"id", "text"} per line)."""
    texts = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "id" not in obj or "text" not in obj:
            raise ValueError(f"{path}: line {lineno}: needs 'id' and 'text'")
        texts.append((int(obj["id"]), str(obj["text"])))
    return texts


def _batches(items, size):
    for lo in range(0, len(items), size):
        yield items[lo:lo + size]


def extract_corpus(model, tokenizer, texts: list[tuple[int, str]], out_dir,
                   config: ExtractionConfig = ExtractionConfig(),
                   source_note: str = "") -> ExtractionReport:
    model.eval()
    n_layers = model.config.num_hidden_layers
    if config.layers_to_sum > n_layers:
        raise ValueError(
            f"layers_to_sum={config.layers_to_sum} exceeds the model's "
            f"{n_layers} hidden layers"
        )
    dim = model.config.hidden_size
    lowercased = bool(getattr(tokenizer, "do_lower_case", config.lowercase))
    source = (f"{source_note + '; ' if source_note else ''}"
              f"sum of last {config.layers_to_sum} hidden layers, dim {dim}")
    special_ids = set(tokenizer.all_special_ids)
    truncated = 0

    with CorpusWriter(out_dir, dim=dim, embedding_source=source,
                      lowercased=lowercased) as writer:
        for batch in _batches(texts, config.batch_size):
            raw = [text for _, text in batch]
            full_lengths = [len(ids) for ids in tokenizer(raw)["input_ids"]]
            enc = tokenizer(raw, truncation=True,
                            max_length=config.max_sequence_length,
                            padding=True, return_tensors="pt")
            with torch.no_grad():
                out = model(input_ids=enc["input_ids"],
                            attention_mask=enc["attention_mask"],
                            output_hidden_states=True)
            summed = torch.stack(out.hidden_states[-config.layers_to_sum:]).sum(dim=0)
            for row, (doc_id, text) in enumerate(batch):
                writer.document(doc_id, text)
                if full_lengths[row] > config.max_sequence_length:
                    truncated += 1
                position = 0
                seq_len = int(enc["attention_mask"][row].sum())
                for t in range(seq_len):
                    token_id = int(enc["input_ids"][row, t])
                    if token_id in special_ids:
                        continue
                    token = tokenizer.convert_ids_to_tokens(token_id)
                    vec = summed[row, t].numpy().astype(np.float32)
                    writer.occurrence(doc_id, position, token, vec)
                    position += 1
        report = ExtractionReport(writer.root, writer.num_documents,
                                  writer.num_occurrences, truncated)
    return report


def load_model_and_tokenizer(model_path):
    from transformers import AutoModel, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(str(model_path))
    model = AutoModel.from_pretrained(str(model_path))
    return model, tokenizer
