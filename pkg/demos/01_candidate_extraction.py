#!/usr/bin/env python3
"""Walkthrough: from a passage to a deduplicated candidate pool.

Loads the bundled fixture corpus, picks the oxygen passage, and shows each
extraction stage: entity spans, noun chunks, connector-merged chunk runs,
and the final deduplicated candidate universe.

Run from the repository root:  python3 demos/01_candidate_extraction.py
"""

from pathlib import Path

from answergen import (
    candidate_universe,
    extract_chunks,
    extract_entities,
    load_annotations,
    load_squad,
    merge_chunks,
)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

corpus = load_squad(DATA / "squad_dev_sample.json")
annotations = load_annotations(DATA / "annotations_dev.jsonl", corpus)

ann = annotations["Oxygen::0"]
print("passage:")
print(" ", ann.context[:120], "...")
print()

entities = extract_entities(ann)
print(f"{len(entities)} entity candidates:")
for c in entities:
    print(f"  [{c.char_start:4d}:{c.char_end:4d}] {c.text!r}")
print()

chunks = extract_chunks(ann)
print(f"{len(chunks)} noun-chunk candidates (first 12):")
for c in chunks[:12]:
    print(f"  [{c.char_start:4d}:{c.char_end:4d}] {c.text!r}")
print()

merged = merge_chunks(ann, chunks)
print(f"{len(merged)} merged-chunk candidates (runs joined across and/of/or/,):")
for c in merged:
    print(f"  {c.text!r}")
print()

pool = candidate_universe(ann)
print(f"candidate universe after dedup: {len(pool)} candidates")
print("  (normalized-duplicate overlaps removed, entity spans preferred)")
