"""Extractor acceptance: per-layer dump oracle, loadability, dim contract."""

import json

import numpy as np
import torch
from click.testing import CliRunner

from seedlex import load_corpus
from seedlex_extractor import extract_corpus, load_model_and_tokenizer
from seedlex_extractor.cli import main as cli_main

FIXED_SENTENCE = "feeling lethargic as hell plus a headache and diarrhea"


def test_c8_sum_of_last_four_layers_oracle(model_dir_768, tmp_path):
    """Each emitted embedding equals the summed last-4 hidden states (1e-5);
    the corpus passes load_corpus; manifest dim is 768."""
    model, tokenizer = load_model_and_tokenizer(model_dir_768)
    report = extract_corpus(model, tokenizer, [(0, FIXED_SENTENCE)],
                            tmp_path / "corpus")
    corpus = load_corpus(report.corpus_dir)
    assert corpus.manifest.dim == 768

    # oracle: independent forward pass, per-layer dump, manual position sum
    enc = tokenizer(FIXED_SENTENCE, return_tensors="pt")
    with torch.no_grad():
        states = model(**enc, output_hidden_states=True).hidden_states
    layer_dump = [layer[0].numpy() for layer in states]
    seq_tokens = tokenizer.convert_ids_to_tokens(enc["input_ids"][0])
    non_special = [i for i, tok in enumerate(seq_tokens)
                   if tok not in tokenizer.all_special_tokens]
    assert len(non_special) >= 8  # the sentence must really tokenize

    emitted = {}
    for word in corpus.vocab:
        for _, pos, occ in corpus.occurrences_of(word):
            emitted[pos] = occ
    assert sorted(emitted) == list(range(len(non_special)))

    for out_pos, seq_pos in enumerate(non_special):
        expected = (layer_dump[-1][seq_pos] + layer_dump[-2][seq_pos]
                    + layer_dump[-3][seq_pos] + layer_dump[-4][seq_pos])
        np.testing.assert_allclose(emitted[out_pos].embedding, expected, atol=1e-5)
        assert emitted[out_pos].token == seq_tokens[seq_pos]


def test_c8_cli_end_to_end(model_dir_768, tmp_path):
    texts_path = tmp_path / "texts.jsonl"
    texts_path.write_text(json.dumps({"id": 0, "text": FIXED_SENTENCE}) + "\n")
    out_dir = tmp_path / "corpus"
    result = CliRunner().invoke(cli_main, [
        "--model", str(model_dir_768), "--in", str(texts_path), "--out", str(out_dir),
    ])
    assert result.exit_code == 0, result.output
    corpus = load_corpus(out_dir)
    assert corpus.manifest.dim == 768
    assert "##hea" in corpus.vocab
