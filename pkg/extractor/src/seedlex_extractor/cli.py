"""CLI: extract (optionally fine-tuning first) from texts.jsonl to a corpus
directory."""

from __future__ import annotations

import click

from .config import ExtractionConfig
from .extract import extract_corpus, load_model_and_tokenizer, load_texts
from .finetune import finetune


@click.command()
@click.option("--model", "model_path", required=True,
              help="Model name or local directory (encoder + tokenizer).")
@click.option("--in", "texts_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Input texts (JSONL: {'id', 'text'}).")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="Output corpus directory.")
@click.option("--finetune", "do_finetune", is_flag=True,
              help="Fine-tune on the input texts first (MLM), then extract "
                   "with the adapted model.")
@click.option("--finetune-out", type=click.Path(file_okay=False), default=None,
              help="Where to keep the adapted model (default: OUT + '.model').")
@click.option("--epochs", type=int, default=5, show_default=True)
@click.option("--learning-rate", type=float, default=1e-5, show_default=True)
@click.option("--batch-size", type=int, default=8, show_default=True)
@click.option("--max-seq-len", type=int, default=128, show_default=True)
@click.option("--layers", type=int, default=4, show_default=True,
              help="How many final hidden layers to sum per token.")
@click.option("--seed", type=int, default=0, show_default=True)
def main(model_path, texts_path, out_dir, do_finetune, finetune_out, epochs,
         learning_rate, batch_size, max_seq_len, layers, seed):
    """Produce an embedding corpus from raw texts."""
    config = ExtractionConfig(epochs=epochs, learning_rate=learning_rate,
                              batch_size=batch_size,
                              max_sequence_length=max_seq_len,
                              layers_to_sum=layers)
    texts = load_texts(texts_path)
    note = str(model_path)
    if do_finetune:
        adapted = finetune_out or f"{out_dir.rstrip('/')}.model"
        click.echo(f"fine-tuning {model_path} on {len(texts)} texts "
                   f"({config.epochs} epochs) -> {adapted}")
        model_path = finetune([t for _, t in texts], model_path, adapted,
                              config, seed=seed)
        note = f"{note} (fine-tuned, {config.epochs} epochs, lr {config.learning_rate})"
    else:
        note = f"{note} (no fine-tuning)"
    model, tokenizer = load_model_and_tokenizer(model_path)
    report = extract_corpus(model, tokenizer, texts, out_dir, config,
                            source_note=note)
    click.echo(f"wrote {report.num_occurrences} occurrences from "
               f"{report.num_documents} documents "
               f"({report.truncated_documents} truncated) -> {report.corpus_dir}")


if __name__ == "__main__":
    main()
