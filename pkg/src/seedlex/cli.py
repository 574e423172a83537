"""Command-line interface: ingest, manual-search, expand, eval, serve.

Exit codes: 0 success, 1 user error (bad input, validation failure),
2 internal error. Every subcommand accepts ``--config FILE`` with YAML
defaults for its flags (explicit flags win).
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import click
import yaml

from .corpus import (
    BINARY_NAME,
    CorpusManifest,
    EmbeddingCorpus,
    _read_binary,
    _read_jsonl,
    load_corpus,
    save_corpus,
)
from .errors import SeedlexError
from .evaluation import DEFAULT_THRESHOLDS, evaluate, load_gold
from .expansion import ExpansionParams, ExpansionSession
from .search import ScanConfig, WordScore, manual_search, scores_to_jsonl

PRESETS = {
    "covid": {"k": 0.3, "n": 5, "m": None, "max_depth": 3, "min_sim": 0.3},
    "adr": {"k": 0.2, "n": 5, "m": None, "max_depth": 3, "min_sim": 0.3},
}


def _config_callback(ctx, param, value):
    if not value:
        return None
    data = yaml.safe_load(Path(value).read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise click.BadParameter("config file must hold a YAML mapping of flag: value")
    defaults = {str(k).replace("-", "_"): v for k, v in data.items()}
    ctx.default_map = {**(ctx.default_map or {}), **defaults}
    return value


def config_option(fn):
    return click.option(
        "--config", type=click.Path(exists=True, dir_okay=False),
        callback=_config_callback, is_eager=True, expose_value=False,
        help="YAML file providing defaults for any flag of this command.",
    )(fn)


@click.group()
def cli():
    """Seed-word lexicon induction over an embedding-annotated corpus."""


# -- ingest ---------------------------------------------------------------------


def _count_binary_records(path: Path, dim: int) -> int:
    header = struct.Struct("<IHH")
    emb_bytes = dim * 4
    count = 0
    size = path.stat().st_size
    with path.open("rb") as fh:
        pos = 0
        while pos + header.size <= size:
            fh.seek(pos + 4 + 2)
            (token_len,) = struct.unpack("<H", fh.read(2))
            pos += header.size + token_len + emb_bytes
            count += 1
        if pos != size:
            raise SeedlexError(
                f"{path}: byte offset {min(pos, size)}: truncated record"
            )
    return count


def _load_keywords(path: Path) -> list[str]:
    words = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.append(line)
    return words


@cli.command()
@config_option
@click.option("--docs", "docs_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Raw documents (JSONL: {'id', 'text'}).")
@click.option("--occurrences", "occ_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Token occurrences (.bin or .jsonl).")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--dim", type=int, default=None,
              help="Embedding dimensionality (required for .bin input; "
                   "inferred from the first record for .jsonl).")
@click.option("--format", "fmt", type=click.Choice(["binary", "jsonl"]),
              default="binary", show_default=True, help="Output occurrence format.")
@click.option("--embedding-source", default="ingested", show_default=True)
@click.option("--lowercased/--no-lowercased", default=True, show_default=True)
@click.option("--keyword-file", type=click.Path(exists=True, dir_okay=False),
              default=None,
              help="Keep only documents containing one of these substrings "
                   "(one per line, case-insensitive); their occurrences are "
                   "dropped too.")
def ingest(docs_path, occ_path, out_dir, dim, fmt, embedding_source, lowercased,
           keyword_file):
    """Validate raw documents + occurrences and write a corpus directory."""
    docs_path, occ_path = Path(docs_path), Path(occ_path)
    documents = []
    for lineno, line in enumerate(docs_path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        documents.append((int(obj["id"]), str(obj["text"])))

    if keyword_file:
        keywords = _load_keywords(Path(keyword_file))
        documents = [
            (i, t) for i, t in documents
            if any(kw in t.lower() for kw in keywords)
        ]
    kept_ids = {i for i, _ in documents}

    if occ_path.suffix == ".bin":
        if dim is None:
            raise SeedlexError("--dim is required for binary occurrence input")
        n = _count_binary_records(occ_path, dim)
        probe = CorpusManifest(1, dim, 0, n, embedding_source, lowercased, "binary")
        emb, doc_ids, positions, tokens, _ = _read_binary(occ_path, probe)
    else:
        if dim is None:
            with occ_path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        dim = len(json.loads(line)["emb"])
                        break
            if dim is None:
                raise SeedlexError(f"{occ_path}: no occurrence records found")
        probe = CorpusManifest(1, dim, 0, 0, embedding_source, lowercased, "jsonl")
        emb, doc_ids, positions, tokens, _ = _read_jsonl(occ_path, probe)

    records = [
        (int(doc_ids[i]), int(positions[i]), tokens[i], emb[i])
        for i in range(len(tokens))
        if not keyword_file or int(doc_ids[i]) in kept_ids
    ]
    corpus = EmbeddingCorpus.build(
        documents, records, dim=dim, embedding_source=embedding_source,
        lowercased=lowercased, occurrence_format=fmt,
    )
    save_corpus(corpus, out_dir, occurrence_format=fmt)
    click.echo(f"wrote corpus: {len(documents)} documents, {len(records)} occurrences, "
               f"dim {dim} -> {out_dir}")


# -- searches -------------------------------------------------------------------


def _print_scores(scores, limit=None):
    shown = scores if limit is None else scores[:limit]
    width = max([4] + [len(ws.word) for ws in shown])
    click.echo(f"{'word':<{width}}  {'score':>8}  {'surviving':>9}  {'total':>7}")
    for ws in shown:
        click.echo(f"{ws.word:<{width}}  {ws.score:>8.4f}  {ws.surviving:>9}  {ws.total:>7}")
    if limit is not None and len(scores) > limit:
        click.echo(f"... {len(scores) - limit} more")


def _write_ranking(path, model, seed, params_obj, results):
    artifact = {
        "model": model,
        "seed": seed,
        "params": params_obj,
        "results": [ws.to_dict() for ws in results],
    }
    Path(path).write_text(json.dumps(artifact, indent=2, ensure_ascii=False) + "\n",
                          encoding="utf-8")


def _parse_doc_ids(text):
    if text is None:
        return None
    ids = [part.strip() for part in text.split(",") if part.strip()]
    return [int(part) for part in ids]


@cli.command("manual-search")
@config_option
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.argument("seed")
@click.option("--seed-docs", default=None,
              help="Comma-separated document ids holding the seed in context "
                   "(default: every document containing it).")
@click.option("--min-sim", type=float, default=0.3, show_default=True)
@click.option("--min-count", type=int, default=3, show_default=True)
@click.option("--top-k", type=int, default=None)
@click.option("--exclude", default=None, help="Comma-separated tokens to skip.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Write a ranking artifact (JSON) consumable by `seedlex eval`.")
@click.option("--jsonl", "jsonl_path", type=click.Path(dir_okay=False), default=None,
              help="Write raw results as JSON lines.")
def manual_search_cmd(corpus_dir, seed, seed_docs, min_sim, min_count, top_k,
                      exclude, out_path, jsonl_path):
    """Scan the corpus with a seed word's averaged embedding."""
    corpus = load_corpus(corpus_dir)
    config = ScanConfig(
        min_sim=min_sim, min_count=min_count, top_k=top_k,
        exclude=frozenset((exclude or "").split(",")) - {""},
    )
    doc_ids = _parse_doc_ids(seed_docs)
    results = manual_search(corpus, seed, doc_ids, config)
    _print_scores(results, limit=25)
    if out_path:
        _write_ranking(out_path, "manual", seed,
                       {"min_sim": min_sim, "min_count": min_count,
                        "seed_docs": doc_ids, "top_k": top_k}, results)
    if jsonl_path:
        Path(jsonl_path).write_text(scores_to_jsonl(results), encoding="utf-8")


@cli.command()
@config_option
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.argument("seed")
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default="covid",
              show_default=True, help="Parameter preset; explicit flags override.")
@click.option("--k", type=float, default=None, help="Context blend weight in [0, 1].")
@click.option("--n", type=int, default=None, help="Fresh words adopted per expansion.")
@click.option("--m", type=int, default=None, help="Words absorbed per depth (default n).")
@click.option("--max-depth", type=int, default=None)
@click.option("--min-sim", type=float, default=None)
@click.option("--min-count", type=int, default=3, show_default=True)
@click.option("--seed-docs", default=None,
              help="Comma-separated document ids seeding the context embedding.")
@click.option("--out", "session_path", type=click.Path(dir_okay=False), default=None,
              help="Write the finished session snapshot (JSON).")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), default=None,
              help="Write the word graph as Graphviz DOT.")
@click.option("--ranking", "ranking_path", type=click.Path(dir_okay=False), default=None,
              help="Write a ranking artifact (JSON) consumable by `seedlex eval`.")
def expand(corpus_dir, seed, preset, k, n, m, max_depth, min_sim, min_count,
           seed_docs, session_path, dot_path, ranking_path):
    """Run graph-based iterative expansion from a seed word."""
    corpus = load_corpus(corpus_dir)
    base = PRESETS[preset]
    params = ExpansionParams(
        k=base["k"] if k is None else k,
        n=base["n"] if n is None else n,
        m=base["m"] if m is None else m,
        max_depth=base["max_depth"] if max_depth is None else max_depth,
        scan=ScanConfig(min_sim=base["min_sim"] if min_sim is None else min_sim,
                        min_count=min_count),
    )
    session = ExpansionSession.start(corpus, seed, _parse_doc_ids(seed_docs), params)
    graph, ranking = session.run(corpus)
    click.echo(f"graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges "
               f"(k={params.k}, n={params.n}, m={params.effective_m}, "
               f"max_depth={params.max_depth}, min_sim={params.scan.min_sim})")
    _print_scores(ranking, limit=25)
    if session_path:
        Path(session_path).write_text(session.to_json() + "\n", encoding="utf-8")
    if dot_path:
        Path(dot_path).write_text(graph.to_dot(), encoding="utf-8")
    if ranking_path:
        _write_ranking(ranking_path, "graph", seed, params.to_dict(), ranking)


# -- evaluation -----------------------------------------------------------------


@cli.command("eval")
@config_option
@click.option("--ranking", "ranking_paths", multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Ranking artifact(s) written by manual-search/expand.")
@click.option("--gold", "gold_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--p", "thresholds", default=",".join(map(str, DEFAULT_THRESHOLDS)),
              show_default=True, help="Comma-separated precision cutoffs.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Write the report as CSV (model,seed,p,precision).")
@click.option("--keep-case/--lowercase-gold", default=False, show_default=True,
              help="Match gold tokens as-is instead of lowercasing them.")
def eval_cmd(ranking_paths, gold_path, thresholds, out_path, keep_case):
    """Score ranking artifacts against a gold word set."""
    gold = load_gold(gold_path)
    if not keep_case:
        gold = gold.lowercased()
    rankings = {}
    for path in ranking_paths:
        artifact = json.loads(Path(path).read_text(encoding="utf-8"))
        key = (str(artifact["model"]), str(artifact["seed"]))
        if key in rankings:
            raise SeedlexError(f"duplicate ranking for model/seed {key}")
        rankings[key] = [WordScore.from_dict(d) for d in artifact["results"]]
    ps = [int(x) for x in thresholds.split(",") if x.strip()]
    report = evaluate(rankings, gold, ps)
    click.echo(report.format_table())
    if out_path:
        report.write_csv(out_path)


# -- service --------------------------------------------------------------------


@cli.command()
@config_option
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--store", "store_dir", required=True, type=click.Path(file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8756, show_default=True)
@click.option("--static", "static_dir", type=click.Path(exists=True, file_okay=False),
              default=None, help="Serve an analyst-UI bundle under /ui.")
def serve(corpus_dir, store_dir, host, port, static_dir):
    """Run the HTTP API (see README for endpoints)."""
    import uvicorn

    from .service import create_app
    from .store import SessionStore

    corpus = load_corpus(corpus_dir)
    app = create_app(corpus, SessionStore(store_dir), static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (SeedlexError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except Exception as exc:  # noqa: BLE001 - anything else is an internal bug
        click.echo(f"internal error: {exc!r}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
