import math
import random

import pytest
from hypothesis import given, strategies as st

from fcgkit.evaluation import (
    NO_COMMENT,
    corpus_bleu,
    paired_span_report,
    prf_scores,
    validate_label_consistency,
)

from oracles import bleu_by_count_tables


def test_bleu_identity_is_one():
    texts = [
        "they can help their father or mother about money .",
        "use a gerund after the preposition .",
    ]
    result = corpus_bleu(texts, texts)
    assert result.score == pytest.approx(1.0, abs=1e-12)
    assert result.brevity_penalty == 1.0


def test_bleu_hand_computed_case():
    # hyp "a b c d e f" vs ref "a b c d e g": precisions 5/6, 4/5, 3/4,
    # 2/3; equal lengths so BP = 1; score = (5/6*4/5*3/4*2/3)^(1/4).
    result = corpus_bleu(["a b c d e f"], ["a b c d e g"])
    expected = (5 / 6 * 4 / 5 * 3 / 4 * 2 / 3) ** 0.25
    assert result.score == pytest.approx(expected, abs=1e-12)
    assert result.precisions == (5 / 6, 4 / 5, 3 / 4, 2 / 3)


def test_bleu_zero_ngram_precision_zeroes_score():
    result = corpus_bleu(["a b c d"], ["x y z w"])
    assert result.score == 0.0


def test_bleu_short_hypotheses_zero_fourgram_guesses():
    result = corpus_bleu(["a b"], ["a b"])
    assert result.score == 0.0
    assert result.precisions[0] == 1.0
    assert result.precisions[3] == 0.0


def test_bleu_brevity_penalty():
    result = corpus_bleu(["a b c d"], ["a b c d e f g h"])
    assert result.brevity_penalty == pytest.approx(math.exp(1 - 8 / 4), abs=1e-12)


def test_bleu_requires_aligned_nonempty_corpora():
    with pytest.raises(ValueError):
        corpus_bleu(["a"], ["a", "b"])
    with pytest.raises(ValueError):
        corpus_bleu([], [])


def _random_corpus(rng, n_items):
    vocab = ["the", "a", "verb", "noun", "use", "of", "to", ".", "is", "form"]
    hyps, refs = [], []
    for _ in range(n_items):
        hyps.append(" ".join(rng.choice(vocab) for _ in range(rng.randint(1, 15))))
        refs.append(" ".join(rng.choice(vocab) for _ in range(rng.randint(1, 15))))
    return hyps, refs


def test_bleu_matches_count_table_oracle():
    rng = random.Random(777)
    for _ in range(20):
        hyps, refs = _random_corpus(rng, rng.randint(1, 30))
        assert corpus_bleu(hyps, refs).score == pytest.approx(
            bleu_by_count_tables(hyps, refs), abs=1e-9
        )


def test_prf_derived_case():
    # C=5, I=3, N=2: P = 5/8, R = 5/10, F1 = 2PR/(P+R) = 5/9.
    labels = ["correct"] * 5 + ["incorrect"] * 3 + ["no_comment"] * 2
    result = prf_scores(labels)
    assert result.precision == pytest.approx(0.625, abs=1e-12)
    assert result.recall == pytest.approx(0.5, abs=1e-12)
    assert result.f1 == pytest.approx(5 / 9, abs=1e-12)


@given(st.integers(0, 50), st.integers(0, 50))
def test_prf_no_declines_makes_all_three_equal(c, i):
    result = prf_scores(["correct"] * c + ["incorrect"] * i)
    assert result.precision == result.recall == result.f1


def test_prf_zero_denominators():
    result = prf_scores(["no_comment", "no_comment"])
    assert result.precision == 0.0
    assert result.recall == 0.0
    assert result.f1 == 0.0


def test_prf_rejects_unknown_label():
    with pytest.raises(ValueError):
        prf_scores(["correct", "sort-of"])


def test_label_consistency():
    labels = {"1": "correct", "2": "no_comment", "3": "incorrect"}
    outputs = {"1": "a comment .", "2": NO_COMMENT, "3": "another ."}
    assert validate_label_consistency(labels, outputs) == []
    bad_outputs = {"1": NO_COMMENT, "2": "oops a comment", "3": "fine ."}
    problems = validate_label_consistency(labels, bad_outputs)
    assert len(problems) == 2


def test_paired_span_report():
    items = [
        ("1", "she was happy about it .", "use with instead ."),
        ("2", "she was happy about it .", "add an article ."),
        ("3", "a lonely sentence .", "whatever ."),
        ("4", "he was angry at them .", "same output ."),
        ("5", "he was angry at them .", "same output ."),
    ]
    report = paired_span_report(items)
    assert report.n_groups == 2
    assert report.n_all_distinct == 1
    first, second = report.groups
    assert first.all_distinct and first.item_ids == ("1", "2")
    assert not second.all_distinct
