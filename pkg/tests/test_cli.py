import json

import numpy as np
import pytest

from seedlex import ExpansionSession, load_corpus
from seedlex.cli import main
from synth import CorpusBuilder, planted_cluster_corpus, random_corpus


@pytest.fixture
def planted_dir(tmp_path):
    rng = np.random.default_rng(7)
    builder, seed, gold, _ = planted_cluster_corpus(rng, dim=16, n_context=10,
                                                    n_distractors=60)
    root, corpus = builder.write(tmp_path / "corpus")
    gold_path = tmp_path / "gold.json"
    gold_path.write_text(json.dumps(gold.to_dict()))
    return root, seed, gold, gold_path


def run_cli(*args, capsys=None):
    code = main([str(a) for a in args])
    return code


# -- ingest -----------------------------------------------------------------------


def raw_inputs(tmp_path, fmt="jsonl"):
    rng = np.random.default_rng(12)
    builder = random_corpus(rng, n_words=15, n_occurrences=60, dim=4)
    root, corpus = builder.write(tmp_path / "src", occurrence_format=fmt)
    occ_name = "occurrences.bin" if fmt == "binary" else "occurrences.jsonl"
    return root / "documents.jsonl", root / occ_name, corpus


def test_ingest_valid_fixture(tmp_path, capsys):
    docs, occs, _ = raw_inputs(tmp_path)
    out = tmp_path / "corpus"
    assert run_cli("ingest", "--docs", docs, "--occurrences", occs, "--out", out) == 0
    corpus = load_corpus(out)
    assert corpus.num_occurrences == 60
    assert corpus.manifest.occurrence_format == "binary"


def test_ingest_binary_input_requires_dim(tmp_path, capsys):
    docs, occs, _ = raw_inputs(tmp_path, fmt="binary")
    out = tmp_path / "corpus"
    assert run_cli("ingest", "--docs", docs, "--occurrences", occs, "--out", out) == 1
    assert "--dim" in capsys.readouterr().err
    assert run_cli("ingest", "--docs", docs, "--occurrences", occs, "--out", out,
                   "--dim", 4) == 0
    assert load_corpus(out).num_occurrences == 60


def test_ingest_dim_mismatch_names_record(tmp_path, capsys):
    docs, occs, _ = raw_inputs(tmp_path)
    bad = json.loads(occs.read_text().splitlines()[0])
    bad["emb"] = bad["emb"][:2]
    with occs.open("a") as fh:
        fh.write(json.dumps(bad) + "\n")
    out = tmp_path / "corpus"
    assert run_cli("ingest", "--docs", docs, "--occurrences", occs, "--out", out) == 1
    err = capsys.readouterr().err
    assert "line 61" in err and "expected 4" in err


def test_ingest_jsonl_binary_round_trip(tmp_path):
    docs, occs, corpus = raw_inputs(tmp_path, fmt="binary")
    original = occs.read_bytes()

    out_jsonl = tmp_path / "as_jsonl"
    assert run_cli("ingest", "--docs", docs, "--occurrences", occs, "--out", out_jsonl,
                   "--dim", 4, "--format", "jsonl") == 0
    out_bin = tmp_path / "back_to_bin"
    assert run_cli("ingest", "--docs", out_jsonl / "documents.jsonl",
                   "--occurrences", out_jsonl / "occurrences.jsonl",
                   "--out", out_bin, "--format", "binary") == 0
    assert (out_bin / "occurrences.bin").read_bytes() == original


def test_ingest_keyword_filter(tmp_path, capsys):
    docs = tmp_path / "docs.jsonl"
    occs = tmp_path / "occ.jsonl"
    docs.write_text("\n".join([
        json.dumps({"id": 0, "text": "covid cough is back"}),
        json.dumps({"id": 1, "text": "pizza night"}),
    ]) + "\n")
    occs.write_text("\n".join([
        json.dumps({"doc": 0, "pos": 0, "token": "covid", "emb": [1, 0]}),
        json.dumps({"doc": 0, "pos": 1, "token": "cough", "emb": [0, 1]}),
        json.dumps({"doc": 1, "pos": 0, "token": "pizza", "emb": [1, 1]}),
    ]) + "\n")
    kw = tmp_path / "kw.txt"
    kw.write_text("coronavirus\ncovid\n")
    out = tmp_path / "corpus"
    assert run_cli("ingest", "--docs", docs, "--occurrences", occs, "--out", out,
                   "--keyword-file", kw) == 0
    corpus = load_corpus(out)
    assert set(corpus.vocab) == {"covid", "cough"}
    assert list(corpus.documents) == [0]


def test_bundled_covid_keywords_ship_with_package():
    from importlib import resources

    text = (resources.files("seedlex") / "data" / "covid_keywords.txt").read_text()
    words = [w for w in text.split() if w]
    assert "coronavirus" in words and "stayathome" in words


# -- manual-search -------------------------------------------------------------------


def test_manual_search_planted(planted_dir, tmp_path, capsys):
    root, seed, gold, _ = planted_dir
    out = tmp_path / "manual.json"
    assert run_cli("manual-search", "--corpus", root, seed, "--out", out,
                   "--jsonl", tmp_path / "manual.jsonl") == 0
    stdout = capsys.readouterr().out
    first_word = stdout.splitlines()[1].split()[0]
    assert first_word in gold.positives

    artifact = json.loads(out.read_text())
    assert artifact["model"] == "manual"
    assert artifact["seed"] == seed
    assert artifact["params"]["min_sim"] == 0.3  # paper default
    assert artifact["results"][0]["word"] == first_word


def test_manual_search_unknown_seed(planted_dir, capsys):
    root, _, _, _ = planted_dir
    assert run_cli("manual-search", "--corpus", root, "doesnotexist") == 1
    assert "doesnotexist" in capsys.readouterr().err


def test_manual_search_seed_docs(planted_dir, tmp_path):
    root, seed, _, _ = planted_dir
    corpus = load_corpus(root)
    docs = sorted({doc.id for doc, _, _ in corpus.occurrences_of(seed)})
    assert run_cli("manual-search", "--corpus", root, seed,
                   "--seed-docs", ",".join(map(str, docs))) == 0


# -- expand ----------------------------------------------------------------------


def test_expand_defaults_are_paper_covid_settings(planted_dir, tmp_path, capsys):
    root, seed, _, _ = planted_dir
    session_path = tmp_path / "session.json"
    dot_path = tmp_path / "graph.dot"
    ranking_path = tmp_path / "ranking.json"
    assert run_cli("expand", "--corpus", root, seed, "--out", session_path,
                   "--dot", dot_path, "--ranking", ranking_path) == 0
    snapshot = json.loads(session_path.read_text())
    assert snapshot["params"]["k"] == 0.3
    assert snapshot["params"]["n"] == 5
    assert snapshot["params"]["max_depth"] == 3
    assert snapshot["params"]["scan"]["min_sim"] == 0.3
    assert snapshot["status"] == "finished"

    session = ExpansionSession.from_snapshot(snapshot)
    dot = dot_path.read_text()
    assert dot.count(" -> ") == len(session.graph.edges)
    assert dot.count("[width=") == len(session.graph.nodes)

    artifact = json.loads(ranking_path.read_text())
    assert artifact["model"] == "graph"


def test_expand_adr_preset(planted_dir, tmp_path):
    root, seed, _, _ = planted_dir
    session_path = tmp_path / "session.json"
    assert run_cli("expand", "--corpus", root, seed, "--preset", "adr",
                   "--out", session_path) == 0
    snapshot = json.loads(session_path.read_text())
    assert snapshot["params"]["k"] == 0.2
    assert snapshot["params"]["max_depth"] == 3


def test_expand_flag_overrides_preset(planted_dir, tmp_path):
    root, seed, _, _ = planted_dir
    session_path = tmp_path / "session.json"
    assert run_cli("expand", "--corpus", root, seed, "--preset", "adr",
                   "--k", "0.9", "--max-depth", "2", "--out", session_path) == 0
    snapshot = json.loads(session_path.read_text())
    assert snapshot["params"]["k"] == 0.9
    assert snapshot["params"]["max_depth"] == 2


def test_cli_and_engine_agree(planted_dir, tmp_path):
    root, seed, _, _ = planted_dir
    ranking_path = tmp_path / "ranking.json"
    assert run_cli("expand", "--corpus", root, seed, "--ranking", ranking_path) == 0
    from seedlex import ExpansionParams, ScanConfig

    corpus = load_corpus(root)
    session = ExpansionSession.start(
        corpus, seed, params=ExpansionParams(
            k=0.3, n=5, max_depth=3, scan=ScanConfig(min_sim=0.3, min_count=3)))
    _, ranking = session.run(corpus)
    artifact = json.loads(ranking_path.read_text())
    assert artifact["results"] == [ws.to_dict() for ws in ranking]


# -- eval -------------------------------------------------------------------------


def test_eval_reports_csv(planted_dir, tmp_path, capsys):
    root, seed, gold, gold_path = planted_dir
    manual_path = tmp_path / "manual.json"
    graph_path = tmp_path / "graph.json"
    run_cli("manual-search", "--corpus", root, seed, "--out", manual_path)
    run_cli("expand", "--corpus", root, seed, "--ranking", graph_path)
    report_path = tmp_path / "report.csv"
    assert run_cli("eval", "--ranking", manual_path, "--ranking", graph_path,
                   "--gold", gold_path, "--out", report_path) == 0
    stdout = capsys.readouterr().out
    assert "p = 5" in stdout and "p = 20" in stdout

    lines = report_path.read_text().splitlines()
    assert lines[0] == "model,seed,p,precision"
    assert len(lines) == 1 + 6  # 2 models x 3 thresholds
    graph_p5 = [l for l in lines if l.startswith(f"graph,{seed},5,")][0]
    assert float(graph_p5.split(",")[-1]) == 1.0


def test_eval_custom_thresholds(planted_dir, tmp_path):
    root, seed, _, gold_path = planted_dir
    graph_path = tmp_path / "graph.json"
    run_cli("expand", "--corpus", root, seed, "--ranking", graph_path)
    report_path = tmp_path / "report.csv"
    assert run_cli("eval", "--ranking", graph_path, "--gold", gold_path,
                   "--p", "3,7", "--out", report_path) == 0
    lines = report_path.read_text().splitlines()
    assert [l.split(",")[2] for l in lines[1:]] == ["3", "7"]


# -- config file / exit codes ----------------------------------------------------


def test_yaml_config_provides_defaults(planted_dir, tmp_path):
    root, seed, _, _ = planted_dir
    config = tmp_path / "expand.yaml"
    config.write_text("k: 0.8\nmax-depth: 2\n")
    session_path = tmp_path / "session.json"
    assert run_cli("expand", "--config", config, "--corpus", root, seed,
                   "--out", session_path) == 0
    snapshot = json.loads(session_path.read_text())
    assert snapshot["params"]["k"] == 0.8
    assert snapshot["params"]["max_depth"] == 2


def test_explicit_flag_beats_config(planted_dir, tmp_path):
    root, seed, _, _ = planted_dir
    config = tmp_path / "expand.yaml"
    config.write_text("k: 0.8\n")
    session_path = tmp_path / "session.json"
    assert run_cli("expand", "--config", config, "--corpus", root, seed,
                   "--k", "0.1", "--out", session_path) == 0
    assert json.loads(session_path.read_text())["params"]["k"] == 0.1


def test_usage_error_exits_one(capsys):
    assert main(["expand"]) == 1  # missing required --corpus/SEED
    assert main(["no-such-command"]) == 1


def test_invalid_param_value_exits_one(planted_dir, capsys):
    root, seed, _, _ = planted_dir
    assert run_cli("expand", "--corpus", root, seed, "--k", "3.5") == 1
    assert "k must be in" in capsys.readouterr().err
