"""Candidate phrase extraction, merging, deduplication and gold labeling.

Candidates come from three extractors (entity spans, noun-chunk spans, and
connector-merged chunk runs), get deduplicated by normalized text over
overlapping positions, and are labeled positive/negative against the gold
answer spans of their paragraph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace

from .annotation import AnnotatedPassage, LabeledSpan
from .corpus import Paragraph
from .evaluation import normalize

__all__ = [
    "ENTITY",
    "CHUNK",
    "MERGED_CHUNK",
    "GOLD_ANSWER",
    "POSITIVE",
    "NEGATIVE",
    "DEFAULT_CONNECTORS",
    "Candidate",
    "CandidateDataset",
    "extract_entities",
    "extract_chunks",
    "merge_chunks",
    "dedup",
    "label_candidates",
    "candidate_universe",
]

ENTITY = "ENTITY"
CHUNK = "CHUNK"
MERGED_CHUNK = "MERGED_CHUNK"
GOLD_ANSWER = "GOLD_ANSWER"

POSITIVE = "POSITIVE"
NEGATIVE = "NEGATIVE"

# "and", "of", "or" per the chunk-merging rule, plus the comma token that
# separates chunk runs in the wild; configurable for ablations.
DEFAULT_CONNECTORS = frozenset({"and", "of", "or", ","})

# duplicate-survivor priority: entity labels feed the EntityType feature,
# merged chunks are rarer than their parts
_SOURCE_PRIORITY = {GOLD_ANSWER: 0, ENTITY: 1, MERGED_CHUNK: 2, CHUNK: 3}


@dataclass(frozen=True)
class Candidate:
    """A phrase span proposed as a possible quiz answer.

    Token indices are inclusive and may be None for gold answers that
    intersect no token. The char span always slices the paragraph context
    to exactly `text`.
    """

    paragraph_id: str
    first_tok: int | None
    last_tok: int | None
    char_start: int
    char_end: int
    text: str
    source: str
    label: str | None = None

    def span_length(self) -> int:
        return self.char_end - self.char_start

    def overlaps(self, other: "Candidate") -> bool:
        return self.char_start < other.char_end and other.char_start < self.char_end


@dataclass
class CandidateDataset:
    """Labeled candidate rows, grouped by paragraph, plus per-source/label counts."""

    rows: list[Candidate]

    def stats(self) -> dict[str, int]:
        counts = Counter()
        for row in self.rows:
            counts[f"{row.source}/{row.label}"] += 1
            counts[row.label] += 1
        return dict(counts)

    def one_word_positive_fraction(self) -> float:
        positives = [r for r in self.rows if r.label == POSITIVE]
        if not positives:
            return 0.0
        return sum(1 for r in positives if len(r.text.split()) == 1) / len(positives)


def _span_candidate(ann: AnnotatedPassage, span: LabeledSpan, source: str) -> Candidate:
    start, end = ann.span_char_range(span)
    return Candidate(
        paragraph_id=ann.paragraph_id,
        first_tok=span.first_tok,
        last_tok=span.last_tok,
        char_start=start,
        char_end=end,
        text=ann.context[start:end],
        source=source,
    )


def extract_entities(ann: AnnotatedPassage) -> list[Candidate]:
    """One candidate per named-entity span."""
    return [_span_candidate(ann, span, ENTITY) for span in ann.entities]


def extract_chunks(ann: AnnotatedPassage) -> list[Candidate]:
    """One candidate per noun-chunk span."""
    return [_span_candidate(ann, span, CHUNK) for span in ann.noun_chunks]


def _gap_is_connector(
    ann: AnnotatedPassage, left: Candidate, right: Candidate, connectors: frozenset[str]
) -> bool:
    if left.last_tok is None or right.first_tok is None:
        return False
    gap = ann.tokens[left.last_tok + 1 : right.first_tok]
    if not gap:
        return False  # adjacent chunks carry no connective material
    return all(tok.text.lower() in connectors for tok in gap)


def merge_chunks(
    ann: AnnotatedPassage,
    chunks: list[Candidate],
    connectors: frozenset[str] = DEFAULT_CONNECTORS,
    subruns: bool = True,
) -> list[Candidate]:
    """Merged candidates for runs of chunks separated only by connector tokens.

    Returns the additions only; the input chunks are kept by the caller.
    With `subruns`, every contiguous sub-run of length >= 2 inside a maximal
    run is emitted as well, not just the maximal merge.
    """
    ordered = sorted(chunks, key=lambda c: (c.char_start, c.char_end))
    merged: list[Candidate] = []
    seen_spans: set[tuple[int, int]] = set()
    run: list[Candidate] = []

    def emit(run_chunks: list[Candidate]):
        if len(run_chunks) < 2:
            return
        pairs = (
            [(i, j) for i in range(len(run_chunks)) for j in range(i + 1, len(run_chunks))]
            if subruns
            else [(0, len(run_chunks) - 1)]
        )
        for i, j in pairs:
            start = run_chunks[i].char_start
            end = run_chunks[j].char_end
            if (start, end) in seen_spans:
                continue
            seen_spans.add((start, end))
            merged.append(
                Candidate(
                    paragraph_id=ann.paragraph_id,
                    first_tok=run_chunks[i].first_tok,
                    last_tok=run_chunks[j].last_tok,
                    char_start=start,
                    char_end=end,
                    text=ann.context[start:end],
                    source=MERGED_CHUNK,
                )
            )

    for chunk in ordered:
        if run and _gap_is_connector(ann, run[-1], chunk, connectors):
            run.append(chunk)
        else:
            emit(run)
            run = [chunk]
    emit(run)
    return merged


def dedup(cands: list[Candidate]) -> list[Candidate]:
    """Drop candidates whose normalized text duplicates an overlapping survivor.

    Survivors are chosen by source priority (gold > entity > merged chunk >
    chunk), then earlier start, then shorter span. Output is in document
    order; the operation is idempotent.
    """
    norm = {id(c): normalize(c.text) for c in cands}
    contenders = sorted(
        cands,
        key=lambda c: (_SOURCE_PRIORITY[c.source], c.char_start, c.span_length(), c.text),
    )
    kept: list[Candidate] = []
    for cand in contenders:
        duplicate = any(
            norm[id(k)] == norm[id(cand)] and k.overlaps(cand) for k in kept
        )
        if not duplicate:
            kept.append(cand)
    kept.sort(key=lambda c: (c.char_start, c.char_end, _SOURCE_PRIORITY[c.source]))
    return kept


def _covering_token_range(ann: AnnotatedPassage, start: int, end: int) -> tuple[int | None, int | None]:
    idxs = [i for i, t in enumerate(ann.tokens) if t.start < end and t.end > start]
    if not idxs:
        return None, None
    return min(idxs), max(idxs)


def _gold_candidates(para: Paragraph, ann: AnnotatedPassage) -> list[Candidate]:
    spans = []
    for qa in para.qas:
        for answer in qa.answers:
            start = answer.answer_start
            end = start + len(answer.text)
            spans.append((start, end))
    spans.sort()
    golds: list[Candidate] = []
    for start, end in spans:
        text = para.context[start:end]
        norm_text = normalize(text)
        if any(
            normalize(g.text) == norm_text and g.char_start < end and start < g.char_end
            for g in golds
        ):
            continue  # same answer span asked about by several questions
        first, last = _covering_token_range(ann, start, end)
        golds.append(
            Candidate(
                paragraph_id=para.paragraph_id,
                first_tok=first,
                last_tok=last,
                char_start=start,
                char_end=end,
                text=text,
                source=GOLD_ANSWER,
                label=POSITIVE,
            )
        )
    return golds


def label_candidates(
    para: Paragraph, ann: AnnotatedPassage, cands: list[Candidate]
) -> list[Candidate]:
    """Labeled rows for one paragraph: gold answers become positives, extracted
    candidates that duplicate a gold (same normalized text, overlapping span)
    are dropped, everything else is negative."""
    golds = _gold_candidates(para, ann)
    rows = list(golds)
    for cand in cands:
        norm_text = normalize(cand.text)
        subsumed = any(
            normalize(g.text) == norm_text and g.overlaps(cand) for g in golds
        )
        if subsumed:
            continue
        rows.append(replace(cand, label=NEGATIVE))
    rows.sort(key=lambda c: (c.char_start, c.char_end, _SOURCE_PRIORITY[c.source]))
    return rows


def candidate_universe(
    ann: AnnotatedPassage,
    connectors: frozenset[str] = DEFAULT_CONNECTORS,
    subruns: bool = True,
) -> list[Candidate]:
    """The inference-time candidate pool: entities, chunks and merged chunks,
    deduplicated."""
    chunks = extract_chunks(ann)
    pool = extract_entities(ann) + chunks + merge_chunks(ann, chunks, connectors, subruns)
    return dedup(pool)
