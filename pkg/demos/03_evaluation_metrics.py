#!/usr/bin/env python3
"""Walkthrough: the adapted SQuAD metrics.

Shows answer normalization, exact match and token F1 on single pairs, best
score over all of a passage's gold answers, and the Any/Avg aggregations
over a ranked candidate list.

Run from the repository root:  python3 demos/03_evaluation_metrics.py
"""

from answergen import (
    PassageGold,
    aggregate,
    best_against_gold,
    em,
    f1,
    normalize,
    score_candidates,
)
from answergen.evaluation import PassageResult

print("normalization (lowercase, strip punctuation, drop articles):")
for raw in ("the third", "Nobel Prize.", "Skłodowska–Curie", "  A   An The  "):
    print(f"  {raw!r:28s} -> {normalize(raw)!r}")
print()

print("exact match and token F1:")
pairs = [
    ("1745", "1745"),
    ("seven months", "seven months old"),
    ("The Third", "third"),
    ("completely wrong", "right answer"),
]
for pred, gold in pairs:
    print(f"  em={em(pred, gold)}  f1={f1(pred, gold):.3f}  {pred!r} vs {gold!r}")
print()

print("best over all gold variants (multiple annotators, multiple questions):")
gold = PassageGold("demo", ("third", "third-most", "the third"))
for pred in ("third", "third-most abundant", "fourth"):
    best_em, best_f1 = best_against_gold(pred, gold)
    print(f"  {pred!r:24s} -> em={best_em} f1={best_f1:.3f}")
print()

print("Any/Avg over a ranked candidate list (gold: 'oxygen'):")
gold = PassageGold("demo", ("oxygen",))
preds = ["the gas", "oxygen", "a chemical element"]
for n in (1, 2, 3):
    em_any, f1_any, em_avg, f1_avg = score_candidates(preds, gold, n)
    print(
        f"  n={n}: EM-Any={em_any:.2f} F1-Any={f1_any:.2f} "
        f"EM-Avg={em_avg:.2f} F1-Avg={f1_avg:.2f}"
    )
print()

print("corpus-level aggregation (two passages, percentages):")
results = [
    PassageResult("p1", [(1, 1.0), (0, 0.4)]),
    PassageResult("p2", [(0, 0.0), (0, 0.5)]),
]
report = aggregate(results, top_n=2)
print(report.to_table())
