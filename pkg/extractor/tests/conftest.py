import pytest
import torch
from transformers import BertConfig, BertForMaskedLM, BertTokenizerFast

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "i", "have", "a", "dry", "cough", "and", "chest", "pain", "feeling",
    "lethargic", "as", "hell", "plus", "head", "##ache", "fever", "dia",
    "##rr", "##hea", "since", "monday", "tired", "my", "hurts", "the",
    "all", "week", "really", "bad", "throat", "sore", "nose", "runny",
]


def build_model_dir(path, hidden_size, num_layers, num_heads, intermediate,
                    seed=0):
    path.mkdir(parents=True, exist_ok=True)
    vocab_file = path / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    # first param is positional-compatible across transformers 4 (vocab_file)
    # and 5 (vocab)
    tokenizer = BertTokenizerFast(str(vocab_file), do_lower_case=True)
    assert tokenizer.vocab_size == len(VOCAB)
    config = BertConfig(
        vocab_size=len(VOCAB), hidden_size=hidden_size,
        num_hidden_layers=num_layers, num_attention_heads=num_heads,
        intermediate_size=intermediate, max_position_embeddings=160,
    )
    torch.manual_seed(seed)
    model = BertForMaskedLM(config)
    model.save_pretrained(path)
    tokenizer.save_pretrained(path)
    return path


@pytest.fixture(scope="session")
def model_dir_768(tmp_path_factory):
    """Random-weight encoder with the production hidden size (768, 4 layers)."""
    return build_model_dir(tmp_path_factory.mktemp("model768"), 768, 4, 4, 256)


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    """Small encoder for fine-tuning smoke tests."""
    return build_model_dir(tmp_path_factory.mktemp("tiny"), 64, 2, 2, 128)


FIXTURE_TEXTS = [
    "i have a dry cough and chest pain",
    "feeling lethargic as hell plus a headache",
    "fever and diarrhea since monday",
    "my throat hurts and i have a runny nose",
    "really tired all week with a sore throat",
]
