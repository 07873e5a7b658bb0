"""SQuAD v1.1 JSON parsing with character-offset answer validation.

Offsets are Unicode code-point offsets into the paragraph context; every
answer span is checked (and if necessary re-aligned) so that
``context[answer_start:answer_start + len(text)] == text`` holds for each
answer that survives loading.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)

__all__ = [
    "SquadFormatError",
    "AnswerAlignmentError",
    "AnswerSpan",
    "QaPair",
    "Paragraph",
    "Article",
    "SquadCorpus",
    "load_squad",
    "dev_passages",
]


class SquadFormatError(ValueError):
    """The file does not follow the SQuAD v1.1 JSON schema."""


class AnswerAlignmentError(ValueError):
    """An answer text cannot be located anywhere in its paragraph context."""


@dataclass(frozen=True)
class AnswerSpan:
    text: str
    answer_start: int


@dataclass(frozen=True)
class QaPair:
    question: str
    qa_id: str
    answers: tuple[AnswerSpan, ...]


@dataclass(frozen=True)
class Paragraph:
    context: str
    qas: tuple[QaPair, ...]
    paragraph_id: str


@dataclass(frozen=True)
class Article:
    title: str
    paragraphs: tuple[Paragraph, ...]


@dataclass(frozen=True)
class SquadCorpus:
    articles: tuple[Article, ...]

    def paragraphs(self):
        for article in self.articles:
            yield from article.paragraphs

    def question_count(self) -> int:
        return sum(len(p.qas) for p in self.paragraphs())

    def paragraph_map(self) -> dict[str, Paragraph]:
        return {p.paragraph_id: p for p in self.paragraphs()}

    def article_of(self) -> dict[str, Article]:
        """paragraph_id -> owning Article."""
        out = {}
        for article in self.articles:
            for p in article.paragraphs:
                out[p.paragraph_id] = article
        return out


def paragraph_id(title: str, index: int) -> str:
    return f"{title}::{index}"


def _realign(context: str, text: str, declared: int) -> int | None:
    """Offset of the occurrence of `text` nearest to the declared offset, or None."""
    best = None
    start = context.find(text)
    while start != -1:
        if best is None or abs(start - declared) < abs(best - declared):
            best = start
        start = context.find(text, start + 1)
    return best


def _parse_answer(
    raw: dict, context: str, qa_id: str, skip_bad: bool
) -> AnswerSpan | None:
    try:
        text = raw["text"]
        declared = int(raw["answer_start"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SquadFormatError(f"qa {qa_id}: malformed answer entry: {raw!r}") from exc
    if context[declared : declared + len(text)] == text:
        return AnswerSpan(text=text, answer_start=declared)
    found = _realign(context, text, declared)
    if found is not None:
        logger.debug("qa %s: answer re-aligned from offset %d to %d", qa_id, declared, found)
        return AnswerSpan(text=text, answer_start=found)
    if skip_bad:
        logger.warning("qa %s: answer %r not found in context; skipped", qa_id, text)
        return None
    raise AnswerAlignmentError(
        f"qa {qa_id}: answer {text!r} not found anywhere in its context"
    )


def load_squad(path: str | Path, skip_bad_answers: bool = False) -> SquadCorpus:
    """Parse a SQuAD v1.1 JSON file into an offset-validated corpus.

    Answers whose text does not match at the declared offset are re-aligned to
    the nearest exact occurrence in the context. Answers found nowhere raise
    AnswerAlignmentError, or are dropped with a warning when
    `skip_bad_answers` is set (questions left without answers are dropped too).
    """
    path = Path(path)
    raw_bytes = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(raw_bytes)
    except json.JSONDecodeError as exc:
        raise SquadFormatError(
            f"{path}: malformed JSON at position {exc.pos} (line {exc.lineno})"
        ) from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("data"), list):
        raise SquadFormatError(f"{path}: missing top-level 'data' array")

    articles = []
    n_skipped_answers = 0
    for ai, raw_article in enumerate(doc["data"]):
        title = raw_article.get("title")
        if not title:
            raise SquadFormatError(f"article #{ai}: missing or empty 'title'")
        raw_paragraphs = raw_article.get("paragraphs")
        if not isinstance(raw_paragraphs, list) or not raw_paragraphs:
            raise SquadFormatError(f"article {title!r}: needs at least one paragraph")
        paragraphs = []
        for pi, raw_para in enumerate(raw_paragraphs):
            context = raw_para.get("context")
            if not context:
                raise SquadFormatError(f"article {title!r} paragraph #{pi}: empty context")
            if not isinstance(raw_para.get("qas"), list):
                raise SquadFormatError(f"article {title!r} paragraph #{pi}: missing 'qas'")
            qas = []
            for raw_qa in raw_para["qas"]:
                try:
                    question = raw_qa["question"]
                    qa_id = str(raw_qa["id"])
                    raw_answers = raw_qa["answers"]
                except (KeyError, TypeError) as exc:
                    raise SquadFormatError(
                        f"article {title!r} paragraph #{pi}: malformed qa entry"
                    ) from exc
                if not raw_answers:
                    raise SquadFormatError(f"qa {qa_id}: needs at least one answer")
                answers = []
                for raw_answer in raw_answers:
                    span = _parse_answer(raw_answer, context, qa_id, skip_bad_answers)
                    if span is None:
                        n_skipped_answers += 1
                    else:
                        answers.append(span)
                if not answers:
                    logger.warning("qa %s: all answers dropped; question skipped", qa_id)
                    continue
                qas.append(QaPair(question=question, qa_id=qa_id, answers=tuple(answers)))
            paragraphs.append(
                Paragraph(
                    context=context,
                    qas=tuple(qas),
                    paragraph_id=paragraph_id(title, pi),
                )
            )
        articles.append(Article(title=title, paragraphs=tuple(paragraphs)))

    corpus = SquadCorpus(articles=tuple(articles))
    logger.info(
        "loaded %s: %d articles, %d paragraphs, %d questions (%d answers skipped)",
        path.name,
        len(corpus.articles),
        sum(1 for _ in corpus.paragraphs()),
        corpus.question_count(),
        n_skipped_answers,
    )
    return corpus


def dev_passages(corpus: SquadCorpus) -> list[Paragraph]:
    """Paragraphs deduplicated by exact context text, first occurrence kept."""
    seen: set[str] = set()
    unique = []
    for p in corpus.paragraphs():
        if p.context in seen:
            continue
        seen.add(p.context)
        unique.append(p)
    logger.info("dev passages: %d unique of %d", len(unique), sum(1 for _ in corpus.paragraphs()))
    return unique
