"""Answer normalization, EM/F1, best-over-gold and Any/Avg aggregation."""

import json

import pytest
from hypothesis import given, strategies as st

from answergen.evaluation import (
    PassageGold,
    PassageResult,
    aggregate,
    best_against_gold,
    em,
    f1,
    normalize,
    score_candidates,
)

from conftest import GOLDEN

text_strategy = st.text(
    alphabet=st.characters(codec="utf-8", categories=("L", "N", "P", "Zs")),
    max_size=40,
)


class TestNormalize:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("the third", "third"),
            ("Nobel Prize.", "nobel prize"),
            ("", ""),
            ("A   An The", ""),
            ("20.8%", "208"),
            ("Skłodowska–Curie", "skłodowskacurie"),  # en dash is Unicode punctuation
            ("  spaced   out  ", "spaced out"),
            ("U.S. $100", "us 100"),
        ],
    )
    def test_cases(self, raw, expected):
        assert normalize(raw) == expected

    @given(text_strategy)
    def test_idempotent(self, s):
        assert normalize(normalize(s)) == normalize(s)

    @given(text_strategy)
    def test_no_article_tokens_survive(self, s):
        assert not {"a", "an", "the"} & set(normalize(s).split())


class TestEmF1:
    def test_em_exact(self):
        assert em("1745", "1745") == 1

    def test_em_strict(self):
        assert em("seven months", "seven months old") == 0

    def test_em_via_normalization(self):
        # derived: both sides normalize to the same string
        assert normalize("The Third") == normalize("third")
        assert em("The Third", "third") == 1

    def test_f1_partial(self):
        # P = 2/2, R = 2/3 -> F1 = 0.8
        assert f1("seven months", "seven months old") == pytest.approx(0.8)

    def test_f1_identical(self):
        assert f1("Diatomic oxygen gas", "Diatomic oxygen gas") == 1.0

    def test_f1_disjoint(self):
        assert f1("alpha beta", "gamma delta") == 0.0

    def test_f1_both_empty_after_normalization(self):
        assert f1("the", "an") == 1.0
        assert em("the", "an") == 1

    def test_f1_one_side_empty(self):
        assert f1("the", "oxygen") == 0.0

    @given(text_strategy, text_strategy)
    def test_f1_symmetric_and_bounded(self, a, b):
        assert f1(a, b) == f1(b, a)
        assert 0.0 <= f1(a, b) <= 1.0

    @given(text_strategy, text_strategy)
    def test_exact_match_implies_perfect_f1(self, a, b):
        if em(a, b) == 1:
            assert f1(a, b) == 1.0


class TestBestAgainstGold:
    def test_multi_gold_variants(self):
        gold = PassageGold("p", ("third", "third-most"))
        assert best_against_gold("third", gold) == (1, 1.0)

    def test_single_gold_reduces(self):
        gold = PassageGold("p", ("seven months old",))
        assert best_against_gold("seven months", gold) == (0, pytest.approx(0.8))

    def test_independent_maxima(self):
        # best F1 and best EM may come from different gold variants
        gold = PassageGold("p", ("x", "alpha beta", "alpha beta gamma"))
        scores = [(em("alpha beta", g), f1("alpha beta", g)) for g in gold.gold_answers]
        expected = (max(s[0] for s in scores), max(s[1] for s in scores))
        assert best_against_gold("alpha beta", gold) == expected
        assert expected == (1, 1.0)

    def test_independent_maxima_no_exact(self):
        gold = PassageGold("p", ("alpha beta", "gamma delta epsilon"))
        got = best_against_gold("alpha gamma", gold)
        # vs g1: overlap 1 of 2x2 -> 0.5; vs g2: P=0.5, R=1/3 -> 0.4
        assert got == (0, pytest.approx(0.5))

    def test_empty_gold_rejected(self):
        with pytest.raises(ValueError):
            PassageGold("p", ())


class TestScoreCandidates:
    gold = PassageGold("p", ("oxygen",))

    def test_n1_any_equals_avg(self):
        scores = score_candidates(["oxygen", "junk"], self.gold, 1)
        assert scores[0] == scores[2] and scores[1] == scores[3]

    def test_only_third_matches(self):
        scores = score_candidates(["a", "b", "oxygen"], self.gold, 3)
        assert scores[0] == 1.0
        assert scores[2] == pytest.approx(1 / 3)

    def test_empty_preds(self):
        assert score_candidates([], self.gold, 5) == (0.0, 0.0, 0.0, 0.0)

    def test_n_none_uses_all(self):
        assert score_candidates(["x", "oxygen"], self.gold, None)[0] == 1.0

    def test_n_larger_than_preds(self):
        assert score_candidates(["oxygen"], self.gold, 10)[0] == 1.0


class TestAggregate:
    def test_single_perfect_passage(self):
        results = [PassageResult("p", [(1, 1.0)])]
        report = aggregate(results, top_n=1)
        assert report.per_n[1] == {
            "em_any": 100.0, "f1_any": 100.0, "em_avg": 100.0, "f1_avg": 100.0,
        }

    def test_mean_over_passages(self):
        results = [PassageResult("p1", [(1, 1.0)]), PassageResult("p2", [(0, 0.0)])]
        report = aggregate(results, top_n=1)
        assert report.per_n[1]["em_any"] == 50.0

    def test_empty_pool_counts_as_zero(self):
        results = [PassageResult("p1", [(1, 1.0)]), PassageResult("p2", [])]
        report = aggregate(results, top_n=1)
        assert report.per_n[1]["em_any"] == 50.0
        assert report.n_empty == 1

    def test_no_passages_rejected(self):
        with pytest.raises(ValueError):
            aggregate([], top_n=1)

    @given(
        st.lists(
            st.lists(
                st.tuples(st.integers(0, 1), st.floats(0, 1)),
                max_size=12,
            ),
            min_size=1,
            max_size=6,
        )
    )
    def test_any_monotone_and_dominates_avg(self, score_lists):
        results = [
            PassageResult(f"p{i}", [(e, max(e, f)) for e, f in scores])
            for i, scores in enumerate(score_lists)
        ]
        report = aggregate(results, top_n=10)
        prev_em_any = prev_f1_any = 0.0
        for n in range(1, 11):
            row = report.per_n[n]
            assert row["em_any"] >= prev_em_any - 1e-9
            assert row["f1_any"] >= prev_f1_any - 1e-9
            assert row["em_any"] >= row["em_avg"] - 1e-9
            assert row["f1_any"] >= row["f1_avg"] - 1e-9
            prev_em_any, prev_f1_any = row["em_any"], row["f1_any"]


class TestGoldenParity:
    """Exact agreement with values produced by the reference evaluator
    (tools/make_golden.py is the oracle that generated the file)."""

    def test_all_cases_exact(self):
        cases = json.loads(GOLDEN.read_text(encoding="utf-8"))
        assert len(cases) == 20
        for case in cases:
            gold = PassageGold("golden", tuple(case["golds"]))
            got_em, got_f1 = best_against_gold(case["pred"], gold)
            assert got_em == case["em"], case
            assert got_f1 == case["f1"], case

    def test_required_cases_present(self):
        cases = json.loads(GOLDEN.read_text(encoding="utf-8"))
        pairs = {(c["pred"], tuple(c["golds"])) for c in cases}
        assert ("the third", ("third",)) in pairs
        assert ("third", ("third", "third-most")) in pairs
