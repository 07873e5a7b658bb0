#!/usr/bin/env python3
"""Walkthrough: featurize labeled candidates, train the Bernoulli NB
classifier, and rank a passage's candidate pool.

Uses the bundled fixture corpus end to end, entirely in memory (the
command-line pipeline does the same thing with files in between).

Run from the repository root:  python3 demos/02_train_and_rank.py
"""

from pathlib import Path

from answergen import (
    binarize,
    build_contexts,
    candidate_universe,
    fit_feature_space,
    label_candidates,
    load_annotations,
    load_embeddings,
    load_squad,
    rank_candidates,
    raw_features,
    train,
)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# --- assemble the labeled training rows --------------------------------------

train_corpus = load_squad(DATA / "squad_train_sample.json")
train_ann = load_annotations(DATA / "annotations_train.jsonl", train_corpus)
embeddings = load_embeddings(DATA / "embeddings.txt")
contexts = build_contexts(train_corpus, train_ann, embeddings)

rows = []
for para in train_corpus.paragraphs():
    ann = train_ann[para.paragraph_id]
    rows.extend(label_candidates(para, ann, candidate_universe(ann)))
n_pos = sum(1 for r in rows if r.label == "POSITIVE")
print(f"training rows: {len(rows)} ({n_pos} positive, {len(rows) - n_pos} negative)")

raws = [raw_features(c, contexts[c.paragraph_id]) for c in rows]
space = fit_feature_space(raws)
print(f"feature space: {len(space)} binary ids across 14 families")
print("  sample ids:", ", ".join(space.feature_ids[:4]), "...")

vectors = [binarize(raw, space) for raw in raws]
model = train(list(zip(vectors, (r.label for r in rows))), space, alpha=1.0)
print(f"model trained (alpha={model.alpha})")
print()

# --- rank an unseen passage ---------------------------------------------------

dev_corpus = load_squad(DATA / "squad_dev_sample.json")
dev_ann = load_annotations(DATA / "annotations_dev.jsonl", dev_corpus)
dev_contexts = build_contexts(dev_corpus, dev_ann, embeddings)

ann = dev_ann["Oxygen::0"]
ctx = dev_contexts["Oxygen::0"]
pool = [
    (cand, binarize(raw_features(cand, ctx), space))
    for cand in candidate_universe(ann)
]
print(f"scoring {len(pool)} candidates for the oxygen passage")
for answer in rank_candidates(model, pool, 10):
    print(f"  {answer.rank:2d}. {answer.confidence:6.3f}  {answer.candidate.text!r}")
