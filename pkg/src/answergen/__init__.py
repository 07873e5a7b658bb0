"""Ranked answer-candidate generation for quiz and question authoring.

Pipeline: parse SQuAD v1.1 into a corpus, attach sidecar linguistic
annotations, extract candidate phrases (entities, noun chunks,
connector-merged chunks), featurize and binarize them, rank with a
Bernoulli Naive Bayes classifier, and score the top-N candidates with
adapted SQuAD EM/F1 metrics.
"""

from .corpus import SquadCorpus, load_squad, dev_passages
from .annotation import (
    AnnotatedPassage,
    EmbeddingTable,
    load_annotations,
    load_embeddings,
    cosine,
)
from .candidates import (
    Candidate,
    CandidateDataset,
    candidate_universe,
    dedup,
    extract_chunks,
    extract_entities,
    label_candidates,
    merge_chunks,
)
from .features import (
    FeatureSpace,
    FeatureVector,
    RawFeatures,
    binarize,
    build_contexts,
    fit_feature_space,
    raw_features,
)
from .model import NbModel, RankedAnswer, load_model, posterior, rank_candidates, save_model, train
from .evaluation import (
    EvalReport,
    PassageGold,
    aggregate,
    best_against_gold,
    em,
    f1,
    normalize,
    score_candidates,
)

__version__ = "0.1.0"
