"""SQuAD-style scoring of ranked answer candidates.

Implements answer normalization, exact match (EM), token-level F1, the
per-passage best over all gold answers, and the Any/Avg aggregations over
the top-N candidates, plus candidate-composition statistics.
"""

from __future__ import annotations

import re
import string
import unicodedata
from collections import Counter
from dataclasses import dataclass, field

__all__ = [
    "PassageGold",
    "PassageResult",
    "EvalReport",
    "normalize",
    "em",
    "f1",
    "best_against_gold",
    "score_candidates",
    "aggregate",
]

_ARTICLES_RE = re.compile(r"\b(a|an|the)\b")
_ASCII_PUNCT = set(string.punctuation)


def _is_punct_char(ch: str) -> bool:
    return ch in _ASCII_PUNCT or unicodedata.category(ch).startswith("P")


def normalize(s: str) -> str:
    """Lowercase, strip punctuation, drop articles, collapse whitespace.

    Punctuation covers the ASCII set plus Unicode punctuation categories.
    Idempotent.
    """
    s = s.lower()
    s = "".join(ch for ch in s if not _is_punct_char(ch))
    s = _ARTICLES_RE.sub(" ", s)
    return " ".join(s.split())


def em(pred: str, gold: str) -> int:
    """1 iff the normalized prediction equals the normalized gold answer."""
    return int(normalize(pred) == normalize(gold))


def f1(pred: str, gold: str) -> float:
    """Token-multiset F1 between normalized prediction and gold.

    Both sides empty after normalization counts as a perfect match.
    """
    pred_tokens = normalize(pred).split()
    gold_tokens = normalize(gold).split()
    if not pred_tokens and not gold_tokens:
        return 1.0
    common = Counter(pred_tokens) & Counter(gold_tokens)
    num_same = sum(common.values())
    if num_same == 0:
        return 0.0
    precision = 1.0 * num_same / len(pred_tokens)
    recall = 1.0 * num_same / len(gold_tokens)
    return (2 * precision * recall) / (precision + recall)


@dataclass(frozen=True)
class PassageGold:
    """All human-created answer texts for one passage (every question, every variant)."""

    paragraph_id: str
    gold_answers: tuple[str, ...]

    def __post_init__(self):
        if not self.gold_answers:
            raise ValueError(f"passage {self.paragraph_id}: empty gold answer set")


def best_against_gold(pred: str, gold: PassageGold) -> tuple[int, float]:
    """Max EM and max F1 of `pred` over all gold variants, maximized independently."""
    best_em = 0
    best_f1 = 0.0
    for g in gold.gold_answers:
        best_em = max(best_em, em(pred, g))
        best_f1 = max(best_f1, f1(pred, g))
    return best_em, best_f1


def score_candidates(
    preds: list[str], gold: PassageGold, n: int | None
) -> tuple[float, float, float, float]:
    """(em_any, f1_any, em_avg, f1_avg) over the first min(n, len(preds)) candidates.

    `n=None` uses the whole list. An empty candidate list scores 0 on all four
    metrics; the caller counts and reports such passages.
    """
    used = preds if n is None else preds[:n]
    if not used:
        return 0.0, 0.0, 0.0, 0.0
    scores = [best_against_gold(p, gold) for p in used]
    em_any = max(s[0] for s in scores)
    f1_any = max(s[1] for s in scores)
    em_avg = sum(s[0] for s in scores) / len(scores)
    f1_avg = sum(s[1] for s in scores) / len(scores)
    return float(em_any), float(f1_any), em_avg, f1_avg


@dataclass
class PassageResult:
    """Scored predictions of one passage, ready for aggregation.

    `pred_scores` holds best-against-gold (em, f1) per ranked prediction, in
    rank order. Composition counters are over the top-10 predictions.
    """

    paragraph_id: str
    pred_scores: list[tuple[int, float]]
    n_entities_top10: int = 0
    n_chunks_top10: int = 0


@dataclass
class EvalReport:
    """Per-n metrics (percentages), composition stats and bookkeeping counts."""

    per_n: dict[int, dict[str, float]]
    full: dict[str, float] | None
    n_passages: int
    n_skipped: int
    n_empty: int
    mean_candidates: float
    composition: dict[str, float] | None
    per_passage: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passages_evaluated": self.n_passages,
            "passages_skipped": self.n_skipped,
            "passages_empty_pool": self.n_empty,
            "mean_candidates_per_passage": self.mean_candidates,
            "metrics_per_n": {
                str(n): row for n, row in sorted(self.per_n.items())
            },
            "metrics_full_list": self.full,
            "composition_top10": self.composition,
            "notes": self.notes,
            "per_passage": self.per_passage,
        }

    def to_table(self) -> str:
        """Human-readable table, one row per n plus an optional full-list row."""
        lines = [
            f"{'Answers':>8} {'EM-Any':>8} {'F1-Any':>8} {'EM-Avg':>8} {'F1-Avg':>8}",
        ]
        for n in sorted(self.per_n):
            row = self.per_n[n]
            lines.append(
                f"{n:>8} {row['em_any']:>8.2f} {row['f1_any']:>8.2f} "
                f"{row['em_avg']:>8.2f} {row['f1_avg']:>8.2f}"
            )
        if self.full is not None:
            lines.append(
                f"{'all':>8} {self.full['em_any']:>8.2f} {self.full['f1_any']:>8.2f} "
                f"{self.full['em_avg']:>8.2f} {self.full['f1_avg']:>8.2f}"
            )
        lines.append("")
        lines.append(
            f"passages: {self.n_passages} evaluated, {self.n_skipped} skipped, "
            f"{self.n_empty} with empty candidate pool; "
            f"mean candidates/passage: {self.mean_candidates:.2f}"
        )
        if self.composition is not None:
            lines.append(
                "top-10 composition: "
                f"{self.composition['mean_entities']:.2f} named entities, "
                f"{self.composition['mean_chunks']:.2f} noun chunks per passage"
            )
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def _metrics_at(scores: list[tuple[int, float]], n: int | None) -> dict[str, float]:
    used = scores if n is None else scores[:n]
    if not used:
        return {"em_any": 0.0, "f1_any": 0.0, "em_avg": 0.0, "f1_avg": 0.0}
    return {
        "em_any": float(max(s[0] for s in used)),
        "f1_any": max(s[1] for s in used),
        "em_avg": sum(s[0] for s in used) / len(used),
        "f1_avg": sum(s[1] for s in used) / len(used),
    }


def aggregate(
    results: list[PassageResult],
    top_n: int,
    n_skipped: int = 0,
    with_full: bool = False,
    with_composition: bool = False,
    notes: list[str] | None = None,
) -> EvalReport:
    """Mean metrics over passages, x100, for each n in 1..top_n.

    Passages with empty prediction lists score 0 everywhere and stay in the
    means; passages excluded upstream are only counted via `n_skipped`.
    """
    if not results:
        raise ValueError("no passages to aggregate")
    per_n: dict[int, dict[str, float]] = {}
    for n in range(1, top_n + 1):
        rows = [_metrics_at(r.pred_scores, n) for r in results]
        per_n[n] = {
            key: 100.0 * sum(row[key] for row in rows) / len(rows)
            for key in ("em_any", "f1_any", "em_avg", "f1_avg")
        }
    full = None
    if with_full:
        rows = [_metrics_at(r.pred_scores, None) for r in results]
        full = {
            key: 100.0 * sum(row[key] for row in rows) / len(rows)
            for key in ("em_any", "f1_any", "em_avg", "f1_avg")
        }
    composition = None
    if with_composition:
        composition = {
            "mean_entities": sum(r.n_entities_top10 for r in results) / len(results),
            "mean_chunks": sum(r.n_chunks_top10 for r in results) / len(results),
        }
    n_empty = sum(1 for r in results if not r.pred_scores)
    mean_candidates = sum(len(r.pred_scores) for r in results) / len(results)
    per_passage = []
    for r in results:
        row = _metrics_at(r.pred_scores, top_n)
        per_passage.append(
            {
                "paragraph_id": r.paragraph_id,
                "candidates": len(r.pred_scores),
                **{k: 100.0 * v for k, v in row.items()},
            }
        )
    return EvalReport(
        per_n=per_n,
        full=full,
        n_passages=len(results),
        n_skipped=n_skipped,
        n_empty=n_empty,
        mean_candidates=mean_candidates,
        composition=composition,
        per_passage=per_passage,
        notes=list(notes or []),
    )
