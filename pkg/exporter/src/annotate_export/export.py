"""Batch export of annotation JSON-Lines files and embedding subsets for a
SQuAD corpus, with a manifest that pins the pipeline provenance and the
checksum of every emitted file.

Output formats match the consumer's contract exactly: one JSON object per
paragraph with paragraph_id / tokens / entities / noun_chunks / sentences,
and a word2vec-style text embedding file with a "count dim" header. All
offsets are Unicode code-point offsets into the unmodified context string.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from pathlib import Path

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


class ExportError(RuntimeError):
    pass


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def load_squad_paragraphs(squad_path: str | Path) -> list[tuple[str, str, str]]:
    """(paragraph_id, article_title, context) triples in file order.

    paragraph_id is "<title>::<index within article>", matching the consumer.
    """
    doc = json.loads(Path(squad_path).read_text(encoding="utf-8"))
    out = []
    for article in doc["data"]:
        title = article["title"]
        for i, para in enumerate(article["paragraphs"]):
            out.append((f"{title}::{i}", title, para["context"]))
    return out


def _check_offsets(pid: str, context: str, record: dict) -> None:
    for k, tok in enumerate(record["tokens"]):
        if context[tok["start"] : tok["end"]] != tok["text"]:
            raise ExportError(
                f"{pid}: token #{k} offsets do not slice back to its text "
                f"({tok['text']!r} vs {context[tok['start']:tok['end']]!r})"
            )


def export_annotations(
    squad_path: str | Path, out_path: str | Path, backend
) -> dict:
    """Annotate every paragraph and write the JSON-Lines file; returns the
    manifest fragment (pipeline, tagsets, counts, checksum)."""
    out_path = Path(out_path)
    paragraphs = load_squad_paragraphs(squad_path)
    lines = []
    n_tokens = n_entities = n_chunks = 0
    for pid, _title, context in paragraphs:
        record = backend.annotate(context)
        _check_offsets(pid, context, record)
        record = {"paragraph_id": pid, **record}
        n_tokens += len(record["tokens"])
        n_entities += len(record["entities"])
        n_chunks += len(record["noun_chunks"])
        lines.append(json.dumps(record, ensure_ascii=False))
    _atomic_write(out_path, "\n".join(lines) + ("\n" if lines else ""))
    return {
        "pipeline": {"name": backend.name, "version": backend.version},
        "tagsets": backend.tagset(),
        "counts": {
            "paragraphs": len(paragraphs),
            "tokens": n_tokens,
            "entities": n_entities,
            "noun_chunks": n_chunks,
        },
        "file": {"path": str(out_path), "sha256": _sha256(out_path)},
    }


def corpus_vocabulary(squad_path: str | Path) -> set[str]:
    """Case-folded word vocabulary of all contexts plus article titles."""
    vocab: set[str] = set()
    doc = json.loads(Path(squad_path).read_text(encoding="utf-8"))
    for article in doc["data"]:
        vocab.update(w.lower() for w in _WORD_RE.findall(article["title"]))
        for para in article["paragraphs"]:
            vocab.update(w.lower() for w in _WORD_RE.findall(para["context"]))
    return vocab


def export_embeddings(
    squad_path: str | Path, vectors_path: str | Path, out_path: str | Path
) -> dict:
    """Subset a word2vec-style text file to the corpus+title vocabulary.

    Keeps source order and the first occurrence of each (case-folded) word;
    writes a fresh "count dim" header.
    """
    vectors_path = Path(vectors_path)
    if not vectors_path.is_file():
        raise ExportError(f"vectors source not found: {vectors_path}")
    out_path = Path(out_path)
    vocab = corpus_vocabulary(squad_path)
    kept: list[str] = []
    seen: set[str] = set()
    dim: int | None = None
    with vectors_path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                continue  # source header; rewritten below
            word, *values = parts
            if dim is None:
                dim = len(values)
            key = word.lower()
            if key in vocab and key not in seen:
                seen.add(key)
                kept.append(line.rstrip("\n"))
    if dim is None:
        raise ExportError(f"{vectors_path}: no vector entries")
    body = "\n".join([f"{len(kept)} {dim}"] + kept) + "\n"
    _atomic_write(out_path, body)
    return {
        "counts": {"vocabulary": len(vocab), "vectors_kept": len(kept), "dim": dim},
        "file": {"path": str(out_path), "sha256": _sha256(out_path)},
    }


def write_manifest(path: str | Path, fragments: dict) -> None:
    _atomic_write(Path(path), json.dumps(fragments, indent=1, ensure_ascii=False) + "\n")
