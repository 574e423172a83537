import numpy as np
import pytest

from synth import CorpusBuilder, planted_cluster_corpus, random_corpus, tiny_cough_corpus


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    entries = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid and report.when == "call":
                name = nodeid.split("::")[-1]
                entries.append((name, "PASS" if outcome == "passed" else "FAIL"))
    for report in terminalreporter.stats.get("skipped", []):
        nodeid = getattr(report, "nodeid", "")
        if "test_acceptance.py" in nodeid:
            entries.append((nodeid.split("::")[-1], "SKIP"))
    if entries:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, verdict in sorted(entries):
            terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture
def tiny_corpus():
    return tiny_cough_corpus().build()


@pytest.fixture
def small_random_corpus():
    rng = np.random.default_rng(20260810)
    return random_corpus(rng, n_words=40, n_occurrences=400, dim=8).build()


@pytest.fixture
def planted():
    rng = np.random.default_rng(7)
    builder, seed, gold, centroid = planted_cluster_corpus(
        rng, dim=16, n_context=10, n_distractors=60,
    )
    return builder.build(), seed, gold, centroid


@pytest.fixture
def symptom_corpus():
    """Hand-sized corpus with two clusters: respiratory words near each other,
    unrelated words far away."""
    b = CorpusBuilder(dim=4)
    near = {
        "cough": [1.0, 0.1, 0.0, 0.0],
        "fever": [0.9, 0.3, 0.1, 0.0],
        "throat": [0.8, 0.4, 0.0, 0.1],
        "##itis": [0.85, 0.2, 0.2, 0.0],
    }
    far = {
        "pizza": [0.0, 0.1, 1.0, 0.3],
        "election": [0.1, 0.0, 0.2, 1.0],
    }
    for word, base in {**near, **far}.items():
        base = np.asarray(base)
        for i in range(3):
            jitter = base + 0.01 * np.array([i, -i, i, i])
            b.word_doc([word, f"{word}x"], [jitter, jitter[::-1] + 0.5])
    return b.build()
