"""Graph-based iterative lexicon expansion.

Starting from a seed word, a context embedding is initialized to the seed's
representative embedding. Nodes are expanded breadth-first: each expansion
blends the context embedding with the node's own embedding
(``q = k * context + (1 - k) * node``), scans the corpus with ``q``, adopts
the top ``n`` fresh words as new nodes one depth further out, and records
weighted edges. When a depth is fully expanded, the context embedding
absorbs the ``m`` discovered words most similar to it:

    context <- (context + sum(embeddings of selected)) / (selected + 1)

Expansion stops when the queue empties; words at ``max_depth`` become leaf
nodes. The final ranking scores every non-seed node by cosine similarity of
its representative embedding to the final context embedding.

Sessions are deterministic: identical corpus, parameters and seed produce
byte-identical snapshots, and a snapshot can be reloaded and continued or
replayed for verification.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .corpus import EmbeddingCorpus
from .errors import SessionStateError, UnknownWordError
from .search import ScanConfig, WordScore, cosine_similarity, scan
from .validation import check_positive_int, check_range

SNAPSHOT_VERSION = 1
RUNNING = "running"
FINISHED = "finished"
LABELS = ("accepted", "rejected", "unreviewed")


@dataclass(frozen=True)
class ExpansionParams:
    """Expansion knobs.

    ``k`` trades context exploitation (1.0) against local exploration (0.0);
    ``n`` caps fresh words adopted per expanded node; ``m`` caps words
    absorbed into the context embedding per depth (defaults to ``n``);
    ``max_depth`` bounds the graph radius.
    """

    k: float = 0.3
    n: int = 5
    m: int | None = None
    max_depth: int = 3
    scan: ScanConfig = field(default_factory=ScanConfig)

    def __post_init__(self):
        check_range(self.k, 0.0, 1.0, "k")
        check_positive_int(self.n, "n")
        if self.m is not None:
            check_positive_int(self.m, "m")
        check_positive_int(self.max_depth, "max_depth")

    @property
    def effective_m(self) -> int:
        return self.n if self.m is None else self.m

    def to_dict(self) -> dict:
        return {
            "k": self.k, "n": self.n, "m": self.m, "max_depth": self.max_depth,
            "scan": {
                "min_sim": self.scan.min_sim,
                "min_count": self.scan.min_count,
                "exclude": sorted(self.scan.exclude),
                "token_filter": self.scan.token_filter,
                "top_k": self.scan.top_k,
                "average_first": self.scan.average_first,
            },
        }

    @classmethod
    def from_dict(cls, obj) -> "ExpansionParams":
        sc = obj.get("scan", {})
        return cls(
            k=float(obj["k"]), n=int(obj["n"]),
            m=None if obj.get("m") is None else int(obj["m"]),
            max_depth=int(obj["max_depth"]),
            scan=ScanConfig(
                min_sim=float(sc.get("min_sim", 0.3)),
                min_count=int(sc.get("min_count", 3)),
                exclude=frozenset(sc.get("exclude", ())),
                token_filter=bool(sc.get("token_filter", True)),
                top_k=None if sc.get("top_k") is None else int(sc["top_k"]),
                average_first=bool(sc.get("average_first", False)),
            ),
        )


@dataclass
class GraphNode:
    word: str
    depth: int
    discovery_score: float
    occurrence_count: int


@dataclass
class GraphEdge:
    source: str
    target: str
    weight: float


class WordGraph:
    """Directed weighted word graph; nodes keep first-discovery order."""

    def __init__(self):
        self.nodes: dict[str, GraphNode] = {}
        self.edges: list[GraphEdge] = []

    def __contains__(self, word: str) -> bool:
        return word in self.nodes

    def add_node(self, word, depth, discovery_score, occurrence_count):
        if word in self.nodes:
            raise ValueError(f"node already exists: {word!r}")
        self.nodes[word] = GraphNode(word, depth, discovery_score, occurrence_count)

    def add_edge(self, source, target, weight):
        self.edges.append(GraphEdge(source, target, float(weight)))

    def to_json_obj(self) -> dict:
        return {
            "nodes": [
                {"word": n.word, "depth": n.depth,
                 "discovery_score": n.discovery_score,
                 "occurrence_count": n.occurrence_count}
                for n in self.nodes.values()
            ],
            "edges": [
                {"from": e.source, "to": e.target, "weight": e.weight}
                for e in self.edges
            ],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "WordGraph":
        graph = cls()
        for n in obj["nodes"]:
            graph.add_node(n["word"], int(n["depth"]),
                           float(n["discovery_score"]), int(n["occurrence_count"]))
        for e in obj["edges"]:
            graph.add_edge(e["from"], e["to"], float(e["weight"]))
        return graph

    def to_dot(self) -> str:
        """Render as Graphviz DOT: node size tracks occurrence count, fill
        intensity tracks discovery similarity, edge penwidth tracks weight."""
        counts = [n.occurrence_count for n in self.nodes.values()] or [1]
        cmax = max(max(counts), 1)
        lines = ["digraph lexicon {",
                 '  node [shape=circle style=filled fontname="Helvetica" '
                 'fixedsize=true colorscheme=blues9];']
        for n in self.nodes.values():
            width = 0.4 + 1.6 * (n.occurrence_count / cmax) ** 0.5
            intensity = max(0.0, min(1.0, n.discovery_score))
            shade = 1 + round(intensity * 8)  # blues9 color index
            label = _dot_escape(n.word)
            lines.append(
                f'  "{label}" [width={width:.3f} fillcolor={shade} '
                f'tooltip="sim {n.discovery_score:.3f}, count {n.occurrence_count}"];'
            )
        for e in self.edges:
            pen = 0.5 + 3.5 * max(0.0, min(1.0, e.weight))
            lines.append(
                f'  "{_dot_escape(e.source)}" -> "{_dot_escape(e.target)}" '
                f'[penwidth={pen:.3f} label="{e.weight:.3f}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class ExpansionSession:
    """Mutable state of one expansion run (single writer).

    ``history`` logs every step (including the query vector and norms used)
    so a persisted session can be replayed and verified.
    """

    def __init__(self, params, seed_word, seed_doc_ids, cemb, _internal=False):
        if not _internal:
            raise TypeError("use ExpansionSession.start() or from_snapshot()")
        self.params: ExpansionParams = params
        self.seed_word: str = seed_word
        self.seed_doc_ids = None if seed_doc_ids is None else [int(d) for d in seed_doc_ids]
        self.cemb: np.ndarray = np.asarray(cemb, dtype=np.float64)
        self.queue: deque[tuple[str, int]] = deque()
        self.graph = WordGraph()
        self.depth_candidates: dict[int, list[WordScore]] = {}
        self.labels: dict[str, str] = {}
        self.history: list[dict] = []
        self.status: str = RUNNING
        self.current_depth: int = 0

    # -- construction -----------------------------------------------------

    @classmethod
    def start(cls, corpus: EmbeddingCorpus, seed_word: str,
              seed_doc_ids: Iterable[int] | None = None,
              params: ExpansionParams | None = None) -> "ExpansionSession":
        params = params or ExpansionParams()
        if seed_word not in corpus:
            raise UnknownWordError(seed_word)
        if seed_doc_ids is not None:
            cemb = corpus.seed_embedding(seed_word, seed_doc_ids)
            doc_list = [int(d) for d in seed_doc_ids]
        else:
            cemb = corpus.representative_embedding(seed_word)
            doc_list = None
        session = cls(params, seed_word, doc_list, cemb, _internal=True)
        session.graph.add_node(seed_word, depth=0, discovery_score=1.0,
                               occurrence_count=corpus.count(seed_word))
        session.queue.append((seed_word, 0))
        session.history.append({
            "event": "init", "seed_word": seed_word, "seed_doc_ids": doc_list,
            "params": params.to_dict(), "cemb_norm": float(np.linalg.norm(cemb)),
        })
        return session

    # -- stepping -----------------------------------------------------------

    def step(self, corpus: EmbeddingCorpus) -> list[WordScore]:
        """Expand the next queued node, handling depth boundaries.

        Returns the freshly discovered words; finishes the session when the
        queue drains.
        """
        if self.status != RUNNING:
            raise SessionStateError("session already finished")
        if not self.queue:
            raise SessionStateError("queue is empty")
        front_depth = self.queue[0][1]
        if front_depth > self.current_depth:
            self._finish_depth(corpus, self.current_depth + 1)
            self.current_depth = front_depth
        discovered = self._expand_next(corpus)
        if not self.queue:
            self._finish_depth(corpus, self.current_depth + 1)
            self.status = FINISHED
            self.history.append({"event": "finished"})
        return discovered

    def run(self, corpus: EmbeddingCorpus) -> tuple[WordGraph, list[WordScore]]:
        if self.status != RUNNING:
            raise SessionStateError("session already finished")
        while self.status == RUNNING:
            self.step(corpus)
        return self.graph, self.rank_results(corpus)

    def _expand_next(self, corpus: EmbeddingCorpus) -> list[WordScore]:
        word, depth = self.queue.popleft()
        node_emb = corpus.representative_embedding(word)
        k = self.params.k
        query = k * self.cemb + (1.0 - k) * node_emb
        results = scan(corpus, query, self.params.scan.excluding(word))

        fresh: list[WordScore] = []
        edges_to_existing: list[list] = []
        for ws in results:
            if ws.word in self.graph:
                self.graph.add_edge(word, ws.word, ws.score)
                edges_to_existing.append([ws.word, ws.score])
            elif len(fresh) < self.params.n:
                fresh.append(ws)
                self.graph.add_node(ws.word, depth=depth + 1,
                                    discovery_score=ws.score,
                                    occurrence_count=corpus.count(ws.word))
                self.graph.add_edge(word, ws.word, ws.score)
                if depth + 1 < self.params.max_depth:
                    self.queue.append((ws.word, depth + 1))
        if fresh:
            self.depth_candidates.setdefault(depth + 1, []).extend(fresh)

        self.history.append({
            "event": "expand", "word": word, "depth": depth,
            "query": [float(x) for x in query],
            "query_norm": float(np.linalg.norm(query)),
            "cemb_norm": float(np.linalg.norm(self.cemb)),
            "discovered": [ws.to_dict() for ws in fresh],
            "edges_to_existing": edges_to_existing,
        })
        return fresh

    def _finish_depth(self, corpus: EmbeddingCorpus, depth: int) -> np.ndarray:
        """Absorb the just-completed depth's best discoveries into the
        context embedding (selected by similarity to the current context)."""
        candidates = self.depth_candidates.get(depth, [])
        seen = set()
        scored: list[tuple[float, str]] = []
        for ws in candidates:
            if ws.word in seen:
                continue
            seen.add(ws.word)
            emb = corpus.representative_embedding(ws.word)
            scored.append((cosine_similarity(emb, self.cemb), ws.word))
        scored.sort(key=lambda item: (-item[0], item[1]))
        selected = [w for _, w in scored[:self.params.effective_m]]
        if selected:
            total = self.cemb.copy()
            for w in selected:
                total += corpus.representative_embedding(w)
            self.cemb = total / (len(selected) + 1)
        self.history.append({
            "event": "finish_depth", "depth": depth, "selected": selected,
            "cemb_norm": float(np.linalg.norm(self.cemb)),
        })
        return self.cemb

    # -- results ------------------------------------------------------------

    def rank_results(self, corpus: EmbeddingCorpus) -> list[WordScore]:
        """Every non-seed node scored by similarity to the final context
        embedding."""
        if self.status != FINISHED:
            raise SessionStateError("session still running; results are not final")
        out = []
        for node in self.graph.nodes.values():
            if node.word == self.seed_word:
                continue
            score = cosine_similarity(corpus.representative_embedding(node.word), self.cemb)
            out.append(WordScore(node.word, score, node.occurrence_count,
                                 node.occurrence_count))
        out.sort(key=lambda ws: (-ws.score, -ws.surviving, ws.word))
        return out

    # -- labels / reseed ----------------------------------------------------

    def set_label(self, word: str, label: str) -> None:
        if label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {label!r}")
        if word not in self.graph:
            raise UnknownWordError(word)
        if label == "unreviewed":
            self.labels.pop(word, None)
        else:
            self.labels[word] = label

    def accepted_words(self) -> list[str]:
        return sorted(w for w, lab in self.labels.items() if lab == "accepted")

    def reseed(self, accepted_words: Iterable[str], corpus: EmbeddingCorpus,
               k: float | None = None) -> "ExpansionSession":
        """Start a follow-up session whose context embedding absorbs the
        analyst-accepted words; they are queued for expansion at depth 0."""
        if self.status != FINISHED:
            raise SessionStateError("reseed requires a finished session")
        accepted = sorted(set(accepted_words))
        if not accepted:
            raise ValueError("accepted_words must not be empty")
        for w in accepted:
            if w not in self.graph:
                raise UnknownWordError(w)
        params = self.params if k is None else replace(self.params, k=k)
        total = self.cemb.copy()
        for w in accepted:
            total += corpus.representative_embedding(w)
        cemb = total / (len(accepted) + 1)
        child = ExpansionSession(params, self.seed_word, self.seed_doc_ids, cemb,
                                 _internal=True)
        child.graph.add_node(self.seed_word, depth=0, discovery_score=1.0,
                             occurrence_count=corpus.count(self.seed_word))
        for w in accepted:
            if w != self.seed_word:
                child.graph.add_node(w, depth=0, discovery_score=1.0,
                                     occurrence_count=corpus.count(w))
            child.queue.append((w, 0))
        child.history.append({
            "event": "init_reseed", "seed_word": self.seed_word,
            "accepted": accepted, "params": params.to_dict(),
            "cemb_norm": float(np.linalg.norm(cemb)),
        })
        return child

    # -- persistence ----------------------------------------------------------

    def snapshot(self) -> dict:
        return {
            "format_version": SNAPSHOT_VERSION,
            "seed_word": self.seed_word,
            "seed_doc_ids": self.seed_doc_ids,
            "status": self.status,
            "current_depth": self.current_depth,
            "params": self.params.to_dict(),
            "cemb": [float(x) for x in self.cemb],
            "queue": [[w, d] for w, d in self.queue],
            "graph": self.graph.to_json_obj(),
            "depth_candidates": {
                str(depth): [ws.to_dict() for ws in lst]
                for depth, lst in sorted(self.depth_candidates.items())
            },
            "labels": dict(sorted(self.labels.items())),
            "history": self.history,
        }

    def to_json(self) -> str:
        return canonical_json(self.snapshot())

    @classmethod
    def from_snapshot(cls, obj) -> "ExpansionSession":
        if obj.get("format_version") != SNAPSHOT_VERSION:
            raise ValueError(f"unsupported snapshot version {obj.get('format_version')!r}")
        params = ExpansionParams.from_dict(obj["params"])
        session = cls(params, obj["seed_word"], obj.get("seed_doc_ids"),
                      np.asarray(obj["cemb"], dtype=np.float64), _internal=True)
        session.status = obj["status"]
        session.current_depth = int(obj["current_depth"])
        session.queue = deque((w, int(d)) for w, d in obj["queue"])
        session.graph = WordGraph.from_json_obj(obj["graph"])
        session.depth_candidates = {
            int(depth): [WordScore.from_dict(d) for d in lst]
            for depth, lst in obj["depth_candidates"].items()
        }
        session.labels = dict(obj.get("labels", {}))
        session.history = list(obj["history"])
        return session

    @classmethod
    def from_json(cls, text: str) -> "ExpansionSession":
        return cls.from_snapshot(json.loads(text))

    def replay_hash(self) -> str:
        return hashlib.sha256(canonical_json(self.history).encode("utf-8")).hexdigest()


def replay_session(corpus: EmbeddingCorpus, snapshot: dict) -> ExpansionSession:
    """Re-execute a snapshot's history from scratch against ``corpus``.

    Runs the same number of expansion steps the snapshot recorded and
    returns the replayed session; callers compare ``replay_hash()`` values
    to verify the snapshot is consistent with its corpus.
    """
    init = snapshot["history"][0] if snapshot.get("history") else None
    if init is None or init.get("event") not in ("init", "init_reseed"):
        raise ValueError("snapshot history does not start with an init event")
    if init["event"] == "init_reseed":
        raise SessionStateError(
            "reseeded sessions replay through their parent; verify the parent snapshot"
        )
    params = ExpansionParams.from_dict(snapshot["params"])
    session = ExpansionSession.start(corpus, snapshot["seed_word"],
                                     snapshot.get("seed_doc_ids"), params)
    steps = sum(1 for ev in snapshot["history"] if ev["event"] == "expand")
    for _ in range(steps):
        session.step(corpus)
    return session
