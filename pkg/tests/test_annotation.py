"""Annotation parsing/validation, embedding tables, cosine similarity."""

import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from answergen.annotation import (
    AnnotationError,
    EmbeddingFormatError,
    cosine,
    load_annotations,
    load_embeddings,
    parse_passage,
)

from conftest import DEV_ANN, TRAIN_ANN


CONTEXT = "Oxygen is a gas. It reacts."

RECORD = {
    "paragraph_id": "Oxygen::0",
    "tokens": [
        {"text": "Oxygen", "start": 0, "end": 6, "pos": "PROPN", "tag": "NNP", "dep": "nsubj", "head": 1},
        {"text": "is", "start": 7, "end": 9, "pos": "AUX", "tag": "VBZ", "dep": "ROOT", "head": 1},
        {"text": "a", "start": 10, "end": 11, "pos": "DET", "tag": "DT", "dep": "det", "head": 3},
        {"text": "gas", "start": 12, "end": 15, "pos": "NOUN", "tag": "NN", "dep": "attr", "head": 1},
        {"text": ".", "start": 15, "end": 16, "pos": "PUNCT", "tag": "PUNCT", "dep": "punct", "head": 1},
        {"text": "It", "start": 17, "end": 19, "pos": "PRON", "tag": "PRP", "dep": "nsubj", "head": 6},
        {"text": "reacts", "start": 20, "end": 26, "pos": "VERB", "tag": "VBZ", "dep": "ROOT", "head": 6},
        {"text": ".", "start": 26, "end": 27, "pos": "PUNCT", "tag": "PUNCT", "dep": "punct", "head": 6},
    ],
    "entities": [{"first_tok": 0, "last_tok": 0, "label": "ELEMENT"}],
    "noun_chunks": [{"first_tok": 2, "last_tok": 3, "label": "NCH"}],
    "sentences": [
        {"first_tok": 0, "last_tok": 4, "label": "SENT"},
        {"first_tok": 5, "last_tok": 7, "label": "SENT"},
    ],
}


def record(**overrides):
    raw = json.loads(json.dumps(RECORD))
    raw.update(overrides)
    return raw


class TestParsePassage:
    def test_valid_record(self):
        ann = parse_passage(record(), CONTEXT)
        assert ann.span_text(ann.entities[0]) == "Oxygen"
        assert ann.span_text(ann.noun_chunks[0]) == "a gas"
        assert ann.sentence_of(6).first_tok == 5

    def test_empty_token_span_rejected(self):
        raw = record()
        raw["tokens"][0]["end"] = 0
        with pytest.raises(AnnotationError):
            parse_passage(raw, CONTEXT)

    def test_shuffled_tokens_rejected(self):
        raw = record()
        raw["tokens"] = raw["tokens"][::-1]
        with pytest.raises(AnnotationError):
            parse_passage(raw, CONTEXT)

    def test_text_mismatch_names_token(self):
        raw = record()
        raw["tokens"][3]["text"] = "liquid"
        with pytest.raises(AnnotationError, match="token #3"):
            parse_passage(raw, CONTEXT)

    def test_head_crossing_sentence_rejected(self):
        raw = record()
        raw["tokens"][5]["head"] = 1  # second-sentence token pointing into the first
        with pytest.raises(AnnotationError, match="sentence"):
            parse_passage(raw, CONTEXT)

    def test_head_out_of_range_rejected(self):
        raw = record()
        raw["tokens"][5]["head"] = 99
        with pytest.raises(AnnotationError):
            parse_passage(raw, CONTEXT)

    def test_sentences_must_cover_tokens(self):
        raw = record(sentences=[{"first_tok": 0, "last_tok": 4, "label": "SENT"}])
        with pytest.raises(AnnotationError, match="cover"):
            parse_passage(raw, CONTEXT)

    def test_wrong_chunk_label_rejected(self):
        raw = record(noun_chunks=[{"first_tok": 2, "last_tok": 3, "label": "NP"}])
        with pytest.raises(AnnotationError):
            parse_passage(raw, CONTEXT)

    def test_empty_entity_label_rejected(self):
        raw = record(entities=[{"first_tok": 0, "last_tok": 0, "label": ""}])
        with pytest.raises(AnnotationError):
            parse_passage(raw, CONTEXT)

    def test_span_out_of_range_rejected(self):
        raw = record(entities=[{"first_tok": 5, "last_tok": 99, "label": "X"}])
        with pytest.raises(AnnotationError):
            parse_passage(raw, CONTEXT)

    def test_empty_pos_rejected(self):
        raw = record()
        raw["tokens"][1]["pos"] = ""
        with pytest.raises(AnnotationError):
            parse_passage(raw, CONTEXT)

    @given(st.randoms(use_true_random=False))
    def test_fuzzed_mutations_never_escape_validation(self, rnd):
        """Any mutated record either parses to a fully-valid passage or
        raises AnnotationError; no invariant-violating value escapes."""
        raw = record()
        for _ in range(rnd.randint(1, 4)):
            tok = rnd.choice(raw["tokens"])
            field = rnd.choice(["start", "end", "head", "text", "pos"])
            if field in ("start", "end", "head"):
                tok[field] = rnd.randint(-2, len(CONTEXT) + 2)
            elif field == "text":
                tok[field] = rnd.choice(["", "x", tok["text"], "Oxygen"])
            else:
                tok[field] = rnd.choice(["", "NOUN"])
        try:
            ann = parse_passage(raw, CONTEXT)
        except AnnotationError:
            return
        prev_end = 0
        for tok in ann.tokens:
            assert tok.start < tok.end
            assert tok.start >= prev_end
            assert CONTEXT[tok.start : tok.end] == tok.text
            assert tok.pos and tok.tag and tok.dep
            prev_end = tok.end
        for i, tok in enumerate(ann.tokens):
            assert ann.sentence_of(tok.head) == ann.sentence_of(i)


class TestLoadAnnotations:
    def test_fixture_files_fully_annotated(self, train_corpus, dev_corpus):
        train_map = load_annotations(TRAIN_ANN, train_corpus)
        dev_map = load_annotations(DEV_ANN, dev_corpus)
        assert set(train_map) == {p.paragraph_id for p in train_corpus.paragraphs()}
        assert set(dev_map) == {p.paragraph_id for p in dev_corpus.paragraphs()}

    def test_unknown_paragraph_id_rejected(self, tmp_path, dev_corpus):
        path = tmp_path / "ann.jsonl"
        path.write_text(json.dumps(record(paragraph_id="Nope::0")) + "\n", encoding="utf-8")
        with pytest.raises(AnnotationError, match="Nope::0"):
            load_annotations(path, dev_corpus)

    def test_missing_annotation_warns_and_excludes(self, tmp_path, dev_corpus, caplog):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        with caplog.at_level("WARNING"):
            result = load_annotations(path, dev_corpus)
        assert result == {}
        assert any("no annotation" in m for m in caplog.messages)

    def test_duplicate_record_rejected(self, tmp_path, dev_corpus):
        first = json.loads(DEV_ANN.read_text(encoding="utf-8").splitlines()[0])
        path = tmp_path / "dup.jsonl"
        path.write_text(json.dumps(first) + "\n" + json.dumps(first) + "\n", encoding="utf-8")
        with pytest.raises(AnnotationError, match="duplicate"):
            load_annotations(path, dev_corpus)


class TestEmbeddings:
    def test_header_and_rows(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("2 3\ncat 1 0 0\ndog 0 1 0\n", encoding="utf-8")
        table = load_embeddings(path)
        assert table.dim == 3 and len(table) == 2
        assert np.allclose(table.get("cat"), [1, 0, 0])

    def test_headerless(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("cat 1 0\ndog 0 1\n", encoding="utf-8")
        assert load_embeddings(path).dim == 2

    def test_first_occurrence_wins(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("cat 1 0 0\ncat 0 1 0\n", encoding="utf-8")
        assert np.allclose(load_embeddings(path).get("cat"), [1, 0, 0])

    def test_case_folded_lookup(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("Cat 1 0 0\n", encoding="utf-8")
        table = load_embeddings(path)
        assert table.get("CAT") is not None and "cAt" in table

    def test_oov_lookup_returns_none(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("cat 1 0 0\n", encoding="utf-8")
        assert load_embeddings(path).get("zebra") is None

    def test_inconsistent_dimension_reports_line(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("cat 1 0 0\ndog 0 1\n", encoding="utf-8")
        with pytest.raises(EmbeddingFormatError, match=":2"):
            load_embeddings(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("", encoding="utf-8")
        with pytest.raises(EmbeddingFormatError):
            load_embeddings(path)

    def test_fixture_table_loads(self):
        from conftest import EMBEDDINGS

        table = load_embeddings(EMBEDDINGS)
        assert table.dim == 32
        assert table.get("oxygen") is not None


finite_vec = st.lists(
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False), min_size=1, max_size=8
)


class TestCosine:
    def test_identical(self):
        assert cosine(np.array([1.0, 0.0]), np.array([1.0, 0.0])) == 1.0

    def test_orthogonal(self):
        assert cosine(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0

    def test_zero_norm_convention(self):
        assert cosine(np.array([0.0, 0.0]), np.array([1.0, 1.0])) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cosine(np.array([1.0]), np.array([1.0, 2.0]))

    @given(finite_vec)
    def test_symmetry_and_range(self, values):
        a = np.array(values)
        b = np.array(values[::-1])
        assert cosine(a, b) == pytest.approx(cosine(b, a))
        assert -1.0 <= cosine(a, b) <= 1.0

    @given(finite_vec, st.floats(0.001, 1000))
    def test_scale_invariance(self, values, k):
        a = np.array(values)
        b = np.array(values[::-1]) + 1.0
        assert cosine(k * a, b) == pytest.approx(cosine(a, b), abs=1e-9)
