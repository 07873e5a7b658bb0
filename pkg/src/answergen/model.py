"""Bernoulli Naive Bayes over binary feature ids: training with Laplace-style
smoothing, log-space posterior scoring that accounts for both feature
presence and absence, candidate ranking, and a versioned JSON model file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .candidates import Candidate, NEGATIVE, POSITIVE
from .features import FeatureSpace, FeatureVector

__all__ = [
    "ModelFormatError",
    "NbModel",
    "RankedAnswer",
    "train",
    "posterior",
    "rank_candidates",
    "save_model",
    "load_model",
]

MODEL_FORMAT = "answergen/bernoulli-nb"
MODEL_FORMAT_VERSION = 1

CLASSES = (POSITIVE, NEGATIVE)


class ModelFormatError(ValueError):
    """Model file is corrupted, truncated, or has an unsupported version."""


@dataclass
class NbModel:
    """Class log-priors and per-(class, feature) presence/absence log
    probabilities, plus the FeatureSpace needed to featurize at inference."""

    alpha: float
    space: FeatureSpace
    log_prior: dict[str, float]
    log_p_present: dict[str, np.ndarray]
    log_p_absent: dict[str, np.ndarray]
    version: int = MODEL_FORMAT_VERSION
    # per-class sum of absence log-probs and presence-absence deltas, for
    # O(|x|) scoring instead of O(|vocab|)
    _absent_sum: dict[str, float] = field(init=False, repr=False)
    _delta: dict[str, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        self._absent_sum = {c: float(self.log_p_absent[c].sum()) for c in CLASSES}
        self._delta = {
            c: self.log_p_present[c] - self.log_p_absent[c] for c in CLASSES
        }


@dataclass(frozen=True)
class RankedAnswer:
    candidate: Candidate
    confidence: float
    rank: int


def train(
    rows: list[tuple[FeatureVector, str]], space: FeatureSpace, alpha: float = 1.0
) -> NbModel:
    """Fit the model by counting: p(present|class) = (n_present + alpha) /
    (n_class + 2*alpha); priors are unsmoothed class fractions."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not rows:
        raise ValueError("cannot train on an empty dataset")
    n_features = len(space)
    class_counts = {c: 0 for c in CLASSES}
    present_counts = {c: np.zeros(n_features, dtype=np.float64) for c in CLASSES}
    for vector, label in rows:
        if label not in class_counts:
            raise ValueError(f"unknown class label {label!r}")
        class_counts[label] += 1
        idx = np.fromiter(vector.present, dtype=np.intp, count=len(vector.present))
        if idx.size and (idx.min() < 0 or idx.max() >= n_features):
            raise ValueError("feature id outside the feature space vocabulary")
        present_counts[label][idx] += 1.0
    if any(count == 0 for count in class_counts.values()):
        raise ValueError(
            f"training data must contain both classes, got counts {class_counts}"
        )
    total = sum(class_counts.values())
    log_prior = {c: math.log(class_counts[c] / total) for c in CLASSES}
    log_p_present = {}
    log_p_absent = {}
    for c in CLASSES:
        denom = class_counts[c] + 2.0 * alpha
        log_p_present[c] = np.log((present_counts[c] + alpha) / denom)
        log_p_absent[c] = np.log((class_counts[c] - present_counts[c] + alpha) / denom)
    return NbModel(
        alpha=alpha,
        space=space,
        log_prior=log_prior,
        log_p_present=log_p_present,
        log_p_absent=log_p_absent,
    )


def posterior(model: NbModel, x: FeatureVector) -> float:
    """P(POSITIVE | x), scored in log space over the full vocabulary (absence
    terms included for every feature not present in x)."""
    n_features = len(model.space)
    idx = np.fromiter(x.present, dtype=np.intp, count=len(x.present))
    if idx.size and (idx.min() < 0 or idx.max() >= n_features):
        raise ValueError("feature id outside the model's feature space")
    scores = {
        c: model.log_prior[c] + model._absent_sum[c] + float(model._delta[c][idx].sum())
        for c in CLASSES
    }
    m = max(scores.values())
    exp_pos = math.exp(scores[POSITIVE] - m)
    exp_neg = math.exp(scores[NEGATIVE] - m)
    return exp_pos / (exp_pos + exp_neg)


def rank_candidates(
    model: NbModel, pool: list[tuple[Candidate, FeatureVector]], n: int
) -> list[RankedAnswer]:
    """Top-n candidates by posterior confidence. Ties break by earlier start,
    then longer span, then text, so the ranking is one fixed total order and
    growing n only extends the prefix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not pool:
        return []
    scored = [(cand, posterior(model, vec)) for cand, vec in pool]
    scored.sort(key=lambda cv: (-cv[1], cv[0].char_start, -cv[0].span_length(), cv[0].text))
    return [
        RankedAnswer(candidate=cand, confidence=conf, rank=i + 1)
        for i, (cand, conf) in enumerate(scored[:n])
    ]


def save_model(model: NbModel, path: str | Path):
    """Serialize to a versioned JSON document; load(save(m)) round-trips every
    parameter exactly (floats are written as shortest exact decimals)."""
    doc = {
        "format": MODEL_FORMAT,
        "format_version": model.version,
        "alpha": model.alpha,
        "classes": list(CLASSES),
        "log_prior": {c: model.log_prior[c] for c in CLASSES},
        "log_p_present": {c: model.log_p_present[c].tolist() for c in CLASSES},
        "log_p_absent": {c: model.log_p_absent[c].tolist() for c in CLASSES},
        "feature_space": model.space.to_dict(),
    }
    Path(path).write_text(json.dumps(doc, indent=1, ensure_ascii=True), encoding="utf-8")


def load_model(path: str | Path) -> NbModel:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"{path}: cannot parse model file: {exc}") from exc
    try:
        if doc["format"] != MODEL_FORMAT:
            raise ModelFormatError(f"{path}: not a {MODEL_FORMAT} file")
        if doc["format_version"] != MODEL_FORMAT_VERSION:
            raise ModelFormatError(
                f"{path}: unsupported format version {doc['format_version']!r}"
            )
        space = FeatureSpace.from_dict(doc["feature_space"])
        n_features = len(space)
        log_p_present = {}
        log_p_absent = {}
        for c in CLASSES:
            log_p_present[c] = np.array(doc["log_p_present"][c], dtype=np.float64)
            log_p_absent[c] = np.array(doc["log_p_absent"][c], dtype=np.float64)
            if len(log_p_present[c]) != n_features or len(log_p_absent[c]) != n_features:
                raise ModelFormatError(f"{path}: parameter arrays do not match vocabulary")
        model = NbModel(
            alpha=float(doc["alpha"]),
            space=space,
            log_prior={c: float(doc["log_prior"][c]) for c in CLASSES},
            log_p_present=log_p_present,
            log_p_absent=log_p_absent,
            version=int(doc["format_version"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"{path}: malformed model file: {exc}") from exc
    return model
