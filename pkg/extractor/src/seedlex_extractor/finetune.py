"""Masked-language-model fine-tuning of the encoder on raw texts.

Writes the adapted model plus tokenizer to a directory together with
``training_log.jsonl`` (one ``{"epoch", "loss"}`` line per epoch). Runs are
deterministic for a fixed seed.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

import numpy as np
import torch
from torch.utils.data import DataLoader

from .config import ExtractionConfig


def _set_seed(seed: int) -> None:
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)


def finetune(texts: list[str], base_model, out_dir,
             config: ExtractionConfig = ExtractionConfig(),
             seed: int = 0) -> Path:
    from transformers import (
        AutoModelForMaskedLM,
        AutoTokenizer,
        DataCollatorForLanguageModeling,
    )

    texts = [t for t in texts if t]
    if not texts:
        raise ValueError("fine-tuning needs at least one non-empty text")
    _set_seed(seed)
    tokenizer = AutoTokenizer.from_pretrained(str(base_model))
    model = AutoModelForMaskedLM.from_pretrained(str(base_model))
    model.train()

    encoded = tokenizer(texts, truncation=True,
                        max_length=config.max_sequence_length)
    dataset = [{"input_ids": ids} for ids in encoded["input_ids"]]
    collator = DataCollatorForLanguageModeling(tokenizer=tokenizer,
                                               mlm_probability=0.15)
    loader = DataLoader(dataset, batch_size=config.batch_size, shuffle=True,
                        collate_fn=collator,
                        generator=torch.Generator().manual_seed(seed))
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)

    log = []
    for epoch in range(1, config.epochs + 1):
        losses = []
        for batch in loader:
            if not (batch["labels"] != -100).any():
                continue  # masking picked no tokens; loss would be undefined
            optimizer.zero_grad()
            loss = model(**batch).loss
            loss.backward()
            optimizer.step()
            losses.append(float(loss.detach()))
        if not losses:
            raise ValueError(
                "no tokens were masked in an entire epoch; corpus is too small"
            )
        log.append({"epoch": epoch, "loss": sum(losses) / len(losses)})

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    with (out_dir / "training_log.jsonl").open("w", encoding="utf-8") as fh:
        for entry in log:
            fh.write(json.dumps(entry) + "\n")
    return out_dir
