"""Candidate featurization: TF-IDF scores, title similarity, head-word
syntax tags, orthographic flags, and their binarization into a sparse
binary feature vector (one-hot categories, five quantile bins per
continuous feature, explicit true/false ids for booleans).
"""

from __future__ import annotations

import math
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .annotation import AnnotatedPassage, EmbeddingTable, Token, cosine
from .candidates import Candidate
from .corpus import SquadCorpus

__all__ = [
    "CONTINUOUS_FAMILIES",
    "CATEGORICAL_FAMILIES",
    "BOOLEAN_FAMILIES",
    "RawFeatures",
    "FeatureSpace",
    "FeatureVector",
    "ParagraphContext",
    "build_contexts",
    "tf",
    "idf",
    "tfidf_phrase",
    "title_similarity",
    "head_word",
    "orthographic",
    "raw_features",
    "fit_feature_space",
    "binarize",
]

CONTINUOUS_FAMILIES = ("tfidf_article", "tfidf_paragraph", "title_similarity")
CATEGORICAL_FAMILIES = ("pos", "tag", "dep", "entity_type")
BOOLEAN_FAMILIES = (
    "is_alpha",
    "is_ascii",
    "is_digit",
    "is_lower",
    "is_capital",
    "is_currency",
    "like_num",
)
ALL_FAMILIES = CONTINUOUS_FAMILIES + CATEGORICAL_FAMILIES + BOOLEAN_FAMILIES

N_BINS = 5
OTHER = "OTHER"
NONE_CATEGORY = "NONE"

_NUM_RE = re.compile(r"[+-]?\d+(?:[,.]\d+)*$")
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)

_NUMBER_WORDS = frozenset(
    """zero one two three four five six seven eight nine ten eleven twelve
    thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty
    thirty forty fifty sixty seventy eighty ninety
    hundred thousand million billion trillion""".split()
)


@dataclass(frozen=True)
class RawFeatures:
    """The feature values of one candidate before binarization."""

    tfidf_article: float
    tfidf_paragraph: float
    title_similarity: float
    pos: str
    tag: str
    dep: str
    entity_type: str
    is_alpha: bool
    is_ascii: bool
    is_digit: bool
    is_lower: bool
    is_capital: bool
    is_currency: bool
    like_num: bool


@dataclass(frozen=True)
class FeatureVector:
    present: frozenset[int]


def _is_word(text: str) -> bool:
    return any(ch.isalnum() for ch in text)


def _fold(doc: Iterable[str]) -> list[str]:
    return [w.lower() for w in doc]


def tf(term: str, doc: Iterable[str]) -> float:
    """Relative frequency of `term` among the case-folded tokens of `doc`."""
    words = _fold(doc)
    if not words:
        return 0.0
    return words.count(term.lower()) / len(words)


def idf(term: str, docs: Iterable[Iterable[str]]) -> float:
    """Smoothed inverse document frequency: ln((1+N)/(1+df)) + 1."""
    bags = [set(_fold(doc)) for doc in docs]
    term = term.lower()
    df = sum(1 for bag in bags if term in bag)
    return _idf_from_df(df, len(bags))


def _idf_from_df(df: int, n_docs: int) -> float:
    return math.log((1 + n_docs) / (1 + df)) + 1.0


class ParagraphContext:
    """Everything featurization needs about one annotated paragraph: cached
    term counts for the paragraph, document frequencies over the article's
    paragraphs and over this paragraph's sentences, the article title, and
    the embedding table."""

    def __init__(
        self,
        ann: AnnotatedPassage,
        title: str,
        emb: EmbeddingTable,
        article_df: Counter,
        n_article_docs: int,
        title_sim_mode: str = "pairwise",
    ):
        self.ann = ann
        self.title = title
        self.emb = emb
        self.article_df = article_df
        self.n_article_docs = n_article_docs
        self.title_sim_mode = title_sim_mode

        para_words = passage_words(ann)
        self.para_counts = Counter(para_words)
        self.para_total = len(para_words)

        self.sent_df = Counter()
        self.n_sent_docs = len(ann.sentences)
        for sent in ann.sentences:
            bag = {
                t.text.lower()
                for t in ann.tokens[sent.first_tok : sent.last_tok + 1]
                if _is_word(t.text)
            }
            self.sent_df.update(bag)

        self.entity_label_by_span = {
            ann.span_char_range(span): span.label for span in ann.entities
        }
        self.title_words = tuple(w.lower() for w in _WORD_RE.findall(title))

    def tf(self, word: str) -> float:
        if self.para_total == 0:
            return 0.0
        return self.para_counts[word] / self.para_total

    def idf(self, word: str, scope: str) -> float:
        if scope == "ARTICLE":
            return _idf_from_df(self.article_df[word], self.n_article_docs)
        if scope == "PARAGRAPH":
            return _idf_from_df(self.sent_df[word], self.n_sent_docs)
        raise ValueError(f"unknown IDF scope {scope!r}")


def passage_words(ann: AnnotatedPassage) -> list[str]:
    """Case-folded word tokens of a passage, punctuation-only tokens excluded."""
    return [t.text.lower() for t in ann.tokens if _is_word(t.text)]


def build_contexts(
    corpus: SquadCorpus,
    annotations: dict[str, AnnotatedPassage],
    emb: EmbeddingTable,
    title_sim_mode: str = "pairwise",
) -> dict[str, ParagraphContext]:
    """One ParagraphContext per annotated paragraph. Article-level document
    frequencies are computed over the article's annotated paragraphs."""
    contexts: dict[str, ParagraphContext] = {}
    for article in corpus.articles:
        annotated = [
            annotations[p.paragraph_id]
            for p in article.paragraphs
            if p.paragraph_id in annotations
        ]
        if not annotated:
            continue
        article_df = Counter()
        for ann in annotated:
            article_df.update(set(passage_words(ann)))
        for ann in annotated:
            contexts[ann.paragraph_id] = ParagraphContext(
                ann=ann,
                title=article.title,
                emb=emb,
                article_df=article_df,
                n_article_docs=len(annotated),
                title_sim_mode=title_sim_mode,
            )
    return contexts


def candidate_word_tokens(cand: Candidate, ann: AnnotatedPassage) -> list[Token]:
    if cand.first_tok is None or cand.last_tok is None:
        return []
    return [
        t for t in ann.tokens[cand.first_tok : cand.last_tok + 1] if _is_word(t.text)
    ]


def tfidf_phrase(cand: Candidate, ctx: ParagraphContext, scope: str) -> float:
    """Mean tf x idf over the candidate's word tokens; 0 for an empty word set."""
    words = [t.text.lower() for t in candidate_word_tokens(cand, ctx.ann)]
    if not words:
        return 0.0
    return sum(ctx.tf(w) * ctx.idf(w, scope) for w in words) / len(words)


def title_similarity(cand: Candidate, ctx: ParagraphContext) -> float:
    """Similarity between phrase words and title words via word vectors.

    Pairwise mode averages cosine over all (phrase word, title word) pairs;
    centroid mode compares averaged vectors. OOV words are skipped; with no
    usable pair the similarity is 0.
    """
    phrase_words = [t.text.lower() for t in candidate_word_tokens(cand, ctx.ann)]
    phrase_vecs = [v for v in (ctx.emb.get(w) for w in phrase_words) if v is not None]
    title_vecs = [v for v in (ctx.emb.get(w) for w in ctx.title_words) if v is not None]
    if not phrase_vecs or not title_vecs:
        return 0.0
    if ctx.title_sim_mode == "centroid":
        return cosine(np.mean(phrase_vecs, axis=0), np.mean(title_vecs, axis=0))
    sims = [cosine(vp, vt) for vp in phrase_vecs for vt in title_vecs]
    return sum(sims) / len(sims)


def head_word(cand: Candidate, ctx: ParagraphContext) -> Token | None:
    """The candidate token with the highest article-scope tf x idf; ties go to
    the leftmost token."""
    tokens = candidate_word_tokens(cand, ctx.ann)
    if not tokens:
        return None
    best = None
    best_score = -1.0
    for tok in tokens:
        w = tok.text.lower()
        score = ctx.tf(w) * ctx.idf(w, "ARTICLE")
        if score > best_score:
            best = tok
            best_score = score
    return best


def orthographic(text: str) -> dict[str, bool]:
    """The seven surface-form flags of a phrase.

    is_lower is judged on words containing letters only, so digit-only words
    do not break it (vacuously true when no word has a letter).
    """
    chars = [ch for ch in text if not ch.isspace()]
    words = text.split()
    alpha_words = [w for w in words if any(ch.isalpha() for ch in w)]
    return {
        "is_alpha": bool(chars) and all(ch.isalpha() for ch in chars),
        "is_ascii": text.isascii(),
        "is_digit": bool(chars) and all(ch.isdigit() for ch in chars),
        "is_lower": all(not any(ch.isupper() for ch in w) for w in alpha_words),
        "is_capital": bool(words) and bool(words[0]) and words[0][0].isupper(),
        "is_currency": any(
            any(unicodedata.category(ch) == "Sc" for ch in w) for w in words
        ),
        "like_num": any(
            bool(_NUM_RE.fullmatch(w)) or w.lower() in _NUMBER_WORDS for w in words
        ),
    }


def raw_features(cand: Candidate, ctx: ParagraphContext) -> RawFeatures:
    head = head_word(cand, ctx)
    flags = orthographic(cand.text)
    return RawFeatures(
        tfidf_article=tfidf_phrase(cand, ctx, "ARTICLE"),
        tfidf_paragraph=tfidf_phrase(cand, ctx, "PARAGRAPH"),
        title_similarity=title_similarity(cand, ctx),
        pos=head.pos if head else NONE_CATEGORY,
        tag=head.tag if head else NONE_CATEGORY,
        dep=head.dep if head else NONE_CATEGORY,
        entity_type=ctx.entity_label_by_span.get(
            (cand.char_start, cand.char_end), NONE_CATEGORY
        ),
        **flags,
    )


@dataclass(frozen=True)
class FeatureSpace:
    """The binary feature vocabulary plus the bin edges and categorical
    vocabularies that define it. Fit once on training data; inference maps
    unseen categories to the per-family OTHER id."""

    feature_ids: tuple[str, ...]
    bin_edges: dict[str, tuple[float, float, float, float]]
    categorical_vocab: dict[str, tuple[str, ...]]

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.feature_ids)}

    def __len__(self) -> int:
        return len(self.feature_ids)

    def id_of(self, name: str) -> int:
        return self.index[name]

    def to_dict(self) -> dict:
        return {
            "feature_ids": list(self.feature_ids),
            "bin_edges": {k: list(v) for k, v in self.bin_edges.items()},
            "categorical_vocab": {k: list(v) for k, v in self.categorical_vocab.items()},
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "FeatureSpace":
        return cls(
            feature_ids=tuple(raw["feature_ids"]),
            bin_edges={k: tuple(v) for k, v in raw["bin_edges"].items()},
            categorical_vocab={k: tuple(v) for k, v in raw["categorical_vocab"].items()},
        )


def fit_feature_space(
    training: list[RawFeatures], bin_mode: str = "quantile"
) -> FeatureSpace:
    """Fit bin edges (20/40/60/80th percentiles, or 4 equal-width edges when
    `bin_mode="width"`) and categorical vocabularies on training rows."""
    if not training:
        raise ValueError("cannot fit a feature space on an empty training set")
    if bin_mode not in ("quantile", "width"):
        raise ValueError(f"unknown bin_mode {bin_mode!r}")

    bin_edges = {}
    for family in CONTINUOUS_FAMILIES:
        values = np.array([getattr(r, family) for r in training], dtype=np.float64)
        if bin_mode == "quantile":
            edges = np.percentile(values, [20, 40, 60, 80])
        else:
            edges = np.linspace(values.min(), values.max(), N_BINS + 1)[1:N_BINS]
        bin_edges[family] = tuple(float(e) for e in edges)

    categorical_vocab = {
        family: tuple(sorted({getattr(r, family) for r in training}))
        for family in CATEGORICAL_FAMILIES
    }

    feature_ids: list[str] = []
    for family in CONTINUOUS_FAMILIES:
        feature_ids.extend(f"{family}=bin{k}" for k in range(N_BINS))
    for family in CATEGORICAL_FAMILIES:
        feature_ids.extend(f"{family}={label}" for label in categorical_vocab[family])
        feature_ids.append(f"{family}={OTHER}")
    for family in BOOLEAN_FAMILIES:
        feature_ids.append(f"{family}=true")
        feature_ids.append(f"{family}=false")

    return FeatureSpace(
        feature_ids=tuple(feature_ids),
        bin_edges=bin_edges,
        categorical_vocab=categorical_vocab,
    )


def bin_index(value: float, edges: tuple[float, ...]) -> int:
    """Number of edges strictly below the value (a value equal to an edge
    falls in the lower bin)."""
    return sum(1 for e in edges if e < value)


def binarize(raw: RawFeatures, space: FeatureSpace) -> FeatureVector:
    """Exactly one present id per feature family."""
    present = []
    for family in CONTINUOUS_FAMILIES:
        k = bin_index(getattr(raw, family), space.bin_edges[family])
        present.append(space.id_of(f"{family}=bin{k}"))
    for family in CATEGORICAL_FAMILIES:
        name = f"{family}={getattr(raw, family)}"
        if name not in space.index:
            name = f"{family}={OTHER}"
        present.append(space.id_of(name))
    for family in BOOLEAN_FAMILIES:
        value = "true" if getattr(raw, family) else "false"
        present.append(space.id_of(f"{family}={value}"))
    return FeatureVector(present=frozenset(present))
