"""Sidecar linguistic annotations and word-embedding tables.

Annotations arrive as JSON-Lines, one object per paragraph, carrying tokens
(with POS/TAG/DEP and head indices), entity spans, noun-chunk spans and
sentence spans, all aligned to the exact SQuAD context text. Everything is
validated on load; any passage that survives satisfies every invariant the
downstream candidate and feature code relies on.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import SquadCorpus

logger = logging.getLogger(__name__)

__all__ = [
    "AnnotationError",
    "EmbeddingFormatError",
    "Token",
    "LabeledSpan",
    "AnnotatedPassage",
    "EmbeddingTable",
    "load_annotations",
    "load_embeddings",
    "cosine",
]

CHUNK_LABEL = "NCH"
SENTENCE_LABEL = "SENT"


class AnnotationError(ValueError):
    """Annotation file is malformed or inconsistent with the corpus."""


class EmbeddingFormatError(ValueError):
    """Embedding file is malformed."""


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    pos: str
    tag: str
    dep: str
    head: int


@dataclass(frozen=True)
class LabeledSpan:
    first_tok: int
    last_tok: int
    label: str


@dataclass(frozen=True)
class AnnotatedPassage:
    paragraph_id: str
    context: str
    tokens: tuple[Token, ...]
    entities: tuple[LabeledSpan, ...]
    noun_chunks: tuple[LabeledSpan, ...]
    sentences: tuple[LabeledSpan, ...]

    def span_char_range(self, span: LabeledSpan) -> tuple[int, int]:
        return self.tokens[span.first_tok].start, self.tokens[span.last_tok].end

    def span_text(self, span: LabeledSpan) -> str:
        start, end = self.span_char_range(span)
        return self.context[start:end]

    def sentence_of(self, tok_idx: int) -> LabeledSpan:
        for sent in self.sentences:
            if sent.first_tok <= tok_idx <= sent.last_tok:
                return sent
        raise AnnotationError(
            f"{self.paragraph_id}: token {tok_idx} not covered by any sentence"
        )


def _require(cond: bool, msg: str):
    if not cond:
        raise AnnotationError(msg)


def _parse_span(raw: dict, n_tokens: int, pid: str, kind: str) -> LabeledSpan:
    try:
        first = int(raw["first_tok"])
        last = int(raw["last_tok"])
        label = raw["label"]
    except (KeyError, TypeError, ValueError) as exc:
        raise AnnotationError(f"{pid}: malformed {kind} span {raw!r}") from exc
    _require(0 <= first <= last < n_tokens, f"{pid}: {kind} span [{first},{last}] out of range")
    _require(isinstance(label, str) and label != "", f"{pid}: {kind} span needs a non-empty label")
    return LabeledSpan(first_tok=first, last_tok=last, label=label)


def parse_passage(raw: dict, context: str) -> AnnotatedPassage:
    """Validate one raw annotation record against its paragraph context."""
    pid = raw.get("paragraph_id")
    _require(isinstance(pid, str) and pid != "", "annotation record missing paragraph_id")

    raw_tokens = raw.get("tokens")
    _require(isinstance(raw_tokens, list), f"{pid}: missing token list")
    tokens = []
    prev_end = 0
    for i, rt in enumerate(raw_tokens):
        try:
            tok = Token(
                text=rt["text"],
                start=int(rt["start"]),
                end=int(rt["end"]),
                pos=rt["pos"],
                tag=rt["tag"],
                dep=rt["dep"],
                head=int(rt["head"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise AnnotationError(f"{pid}: malformed token #{i}: {rt!r}") from exc
        _require(tok.start < tok.end, f"{pid}: token #{i} has empty span")
        _require(tok.start >= prev_end, f"{pid}: token #{i} overlaps or is out of order")
        _require(
            0 <= tok.start and tok.end <= len(context),
            f"{pid}: token #{i} outside context bounds",
        )
        _require(
            context[tok.start : tok.end] == tok.text,
            f"{pid}: token #{i} text {tok.text!r} does not match context slice "
            f"{context[tok.start:tok.end]!r}",
        )
        for label_field in ("pos", "tag", "dep"):
            _require(
                isinstance(getattr(tok, label_field), str) and getattr(tok, label_field) != "",
                f"{pid}: token #{i} has empty {label_field}",
            )
        prev_end = tok.end
        tokens.append(tok)

    n = len(tokens)
    sentences = tuple(
        _parse_span(rs, n, pid, "sentence") for rs in raw.get("sentences", [])
    )
    for sent in sentences:
        _require(sent.label == SENTENCE_LABEL, f"{pid}: sentence span labeled {sent.label!r}")
    # sentences must partition the tokens so head containment is checkable
    covered = 0
    for sent in sentences:
        _require(
            sent.first_tok == covered,
            f"{pid}: sentences do not partition tokens (gap/overlap at token {covered})",
        )
        covered = sent.last_tok + 1
    _require(covered == n, f"{pid}: sentences cover {covered} of {n} tokens")

    sent_of = {}
    for si, sent in enumerate(sentences):
        for t in range(sent.first_tok, sent.last_tok + 1):
            sent_of[t] = si
    for i, tok in enumerate(tokens):
        _require(0 <= tok.head < n, f"{pid}: token #{i} head {tok.head} out of range")
        _require(
            sent_of[tok.head] == sent_of[i],
            f"{pid}: token #{i} head {tok.head} crosses a sentence boundary",
        )

    entities = tuple(_parse_span(rs, n, pid, "entity") for rs in raw.get("entities", []))
    chunks = tuple(_parse_span(rs, n, pid, "noun_chunk") for rs in raw.get("noun_chunks", []))
    for chunk in chunks:
        _require(chunk.label == CHUNK_LABEL, f"{pid}: chunk span labeled {chunk.label!r}")

    return AnnotatedPassage(
        paragraph_id=pid,
        context=context,
        tokens=tuple(tokens),
        entities=entities,
        noun_chunks=chunks,
        sentences=sentences,
    )


def load_annotations(
    path: str | Path, corpus: SquadCorpus
) -> dict[str, AnnotatedPassage]:
    """Load and validate JSON-Lines annotations against an already-loaded corpus.

    Unknown paragraph ids and any token/span inconsistency raise
    AnnotationError. Corpus paragraphs without an annotation are only warned
    about; callers exclude them from downstream steps and count them in the
    run report.
    """
    path = Path(path)
    contexts = {p.paragraph_id: p.context for p in corpus.paragraphs()}
    annotations: dict[str, AnnotatedPassage] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise AnnotationError(f"{path}:{lineno}: malformed JSON") from exc
            pid = raw.get("paragraph_id")
            if pid not in contexts:
                raise AnnotationError(f"{path}:{lineno}: unknown paragraph_id {pid!r}")
            if pid in annotations:
                raise AnnotationError(f"{path}:{lineno}: duplicate annotation for {pid!r}")
            annotations[pid] = parse_passage(raw, contexts[pid])
    missing = [pid for pid in contexts if pid not in annotations]
    if missing:
        logger.warning(
            "%s: %d of %d paragraphs have no annotation and will be excluded (e.g. %s)",
            path.name,
            len(missing),
            len(contexts),
            missing[0],
        )
    return annotations


def load_embeddings(path: str | Path) -> "EmbeddingTable":
    """Parse a word2vec-style text file: optional 'count dim' header, then
    one `word v1 .. vdim` row per line. Keys are case-folded; the first
    occurrence of a word wins."""
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    dim = int(parts[1])
                    continue
                except ValueError:
                    pass  # not a header; fall through to entry parsing
            word, *values = parts
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as exc:
                raise EmbeddingFormatError(f"{path}:{lineno}: non-numeric vector component") from exc
            if dim is None:
                dim = len(vec)
            if len(vec) != dim:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: expected {dim} dimensions, got {len(vec)}"
                )
            key = word.lower()
            if key not in vectors:
                vectors[key] = vec
    if dim is None:
        raise EmbeddingFormatError(f"{path}: no embedding entries found")
    return EmbeddingTable(dim=dim, _vectors=vectors)


@dataclass(frozen=True)
class EmbeddingTable:
    dim: int
    _vectors: dict[str, np.ndarray]

    def get(self, word: str) -> np.ndarray | None:
        return self._vectors.get(word.lower())

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def words(self):
        return self._vectors.keys()


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity in [-1, 1]; 0 when either vector has zero norm."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(min(1.0, max(-1.0, float(np.dot(a, b) / (na * nb)))))
