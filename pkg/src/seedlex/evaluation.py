"""Precision@p harness over ranked word lists against gold annotations.

Precision is the paper-style metric: the fraction of the top ``p`` returned
words that belong to the gold set. Short rankings divide by their actual
length (penalizing short lists would smuggle recall into a precision
metric); recall itself is deliberately out of scope.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .search import WordScore

DEFAULT_THRESHOLDS = (5, 10, 20)


@dataclass(frozen=True)
class GoldSet:
    """Gold words for one context (e.g. disease symptoms)."""

    context_label: str
    positives: frozenset[str]
    provenance: str = ""

    def __post_init__(self):
        if not self.positives:
            raise ValueError("gold set must contain at least one positive")
        object.__setattr__(self, "positives", frozenset(self.positives))

    def lowercased(self) -> "GoldSet":
        return GoldSet(self.context_label,
                       frozenset(w.lower() for w in self.positives),
                       self.provenance)

    def to_dict(self) -> dict:
        return {"context_label": self.context_label,
                "positives": sorted(self.positives),
                "provenance": self.provenance}

    @classmethod
    def from_dict(cls, obj) -> "GoldSet":
        return cls(context_label=str(obj["context_label"]),
                   positives=frozenset(obj["positives"]),
                   provenance=str(obj.get("provenance", "")))


def load_gold(path) -> GoldSet:
    return GoldSet.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def save_gold(gold: GoldSet, path) -> None:
    Path(path).write_text(json.dumps(gold.to_dict(), indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


class PrecisionDetail(NamedTuple):
    """Precision plus how many items were actually considered.

    ``considered == 0`` flags an empty ranking, distinguishing it from a
    ranking whose top items were simply all wrong.
    """

    value: float
    hits: int
    considered: int


def _words(ranked: Sequence) -> list[str]:
    return [item.word if isinstance(item, WordScore) else str(item) for item in ranked]


def precision_at_detail(ranked: Sequence, gold: GoldSet | Iterable[str], p: int) -> PrecisionDetail:
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    positives = gold.positives if isinstance(gold, GoldSet) else frozenset(gold)
    top = _words(ranked)[:p]
    if not top:
        return PrecisionDetail(0.0, 0, 0)
    hits = sum(1 for w in top if w in positives)
    return PrecisionDetail(hits / len(top), hits, len(top))


def precision_at(ranked: Sequence, gold: GoldSet | Iterable[str], p: int) -> float:
    """|top min(p, len) ∩ positives| / min(p, len(ranked)); 0.0 when empty."""
    return precision_at_detail(ranked, gold, p).value


@dataclass(frozen=True)
class PrecisionRow:
    model: str
    seed: str
    p: int
    precision: float


@dataclass(frozen=True)
class PrecisionReport:
    rows: tuple[PrecisionRow, ...]

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["model", "seed", "p", "precision"])
        for row in self.rows:
            writer.writerow([row.model, row.seed, row.p, repr(row.precision)])
        return buf.getvalue()

    @classmethod
    def from_csv_text(cls, text: str) -> "PrecisionReport":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header != ["model", "seed", "p", "precision"]:
            raise ValueError(f"unexpected report header: {header!r}")
        rows = tuple(PrecisionRow(m, s, int(p), float(prec)) for m, s, p, prec in reader)
        return cls(rows)

    def write_csv(self, path) -> None:
        Path(path).write_text(self.to_csv_text(), encoding="utf-8")

    @classmethod
    def read_csv(cls, path) -> "PrecisionReport":
        return cls.from_csv_text(Path(path).read_text(encoding="utf-8"))

    def format_table(self) -> str:
        """Console table mirroring the p = 5 / 10 / 20 column layout."""
        thresholds = sorted({row.p for row in self.rows})
        by_key: dict[tuple[str, str], dict[int, float]] = {}
        order = []
        for row in self.rows:
            key = (row.model, row.seed)
            if key not in by_key:
                by_key[key] = {}
                order.append(key)
            by_key[key][row.p] = row.precision
        model_w = max([len("Model")] + [len(m) for m, _ in order])
        seed_w = max([len("Seed word")] + [len(s) for _, s in order])
        headers = [f"p = {p}" for p in thresholds]
        lines = [
            f"{'Model':<{model_w}}  {'Seed word':<{seed_w}}  "
            + "  ".join(f"{h:>8}" for h in headers)
        ]
        lines.append("-" * len(lines[0]))
        for model, seed in order:
            cells = []
            for p in thresholds:
                value = by_key[(model, seed)].get(p)
                cells.append(f"{value:>8.3f}" if value is not None else f"{'-':>8}")
            lines.append(f"{model:<{model_w}}  {seed:<{seed_w}}  " + "  ".join(cells))
        return "\n".join(lines)


def evaluate(rankings: Mapping[tuple[str, str], Sequence],
             gold: GoldSet,
             thresholds: Iterable[int] = DEFAULT_THRESHOLDS) -> PrecisionReport:
    """One precision row per (model, seed, p), in ranking insertion order."""
    ps = sorted(set(int(p) for p in thresholds))
    rows = []
    for (model, seed), ranked in rankings.items():
        for p in ps:
            rows.append(PrecisionRow(model, seed, p, precision_at(ranked, gold, p)))
    return PrecisionReport(tuple(rows))
