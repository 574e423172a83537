"""Extraction and fine-tuning configuration."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ExtractionConfig:
    """Defaults follow the encoder training recipe this pipeline implements:
    5 epochs, lr 1e-5, batch size 8, max sequence length 128, token
    embeddings summed over the last 4 hidden layers, lowercased input."""

    epochs: int = 5
    learning_rate: float = 1e-5
    batch_size: int = 8
    max_sequence_length: int = 128
    layers_to_sum: int = 4
    lowercase: bool = True

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.max_sequence_length < 2:
            raise ValueError("max_sequence_length must allow at least one real token")
        if self.layers_to_sum < 1:
            raise ValueError(f"layers_to_sum must be >= 1, got {self.layers_to_sum}")
