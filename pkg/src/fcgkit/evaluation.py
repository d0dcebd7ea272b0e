"""Evaluation: corpus BLEU, precision/recall/F1 over judgments, pair report.

BLEU is the corpus-level score up to 4-grams with uniform weights and
the standard brevity penalty, no smoothing: any n-gram order with zero
matches (or zero hypothesis n-grams) zeroes the score.

P/R/F1 work over human judgment labels.  Outputs that declined to
comment (the literal <NO_COMMENT> sentinel) are excluded from the
precision denominator but counted against recall, so P = C/(C+I) and
R = C/(C+I+N).  When nothing was declined, precision and recall
coincide.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

NO_COMMENT = "<NO_COMMENT>"

LABEL_CORRECT = "correct"
LABEL_INCORRECT = "incorrect"
LABEL_NO_COMMENT = "no_comment"
VALID_LABELS = frozenset({LABEL_CORRECT, LABEL_INCORRECT, LABEL_NO_COMMENT})


@dataclass(frozen=True)
class BleuResult:
    score: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_length: int
    ref_length: int

    def to_dict(self) -> dict:
        return {
            "bleu": self.score,
            "ngram_precisions": list(self.precisions),
            "brevity_penalty": self.brevity_penalty,
            "hypothesis_length": self.hyp_length,
            "reference_length": self.ref_length,
        }


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def corpus_bleu(
    hypotheses: Sequence[str], references: Sequence[str], max_n: int = 4
) -> BleuResult:
    """Corpus BLEU over whitespace-tokenized normalized text."""
    if len(hypotheses) != len(references):
        raise ValueError(
            f"hypothesis/reference count mismatch: {len(hypotheses)} vs {len(references)}"
        )
    if not hypotheses:
        raise ValueError("cannot score an empty corpus")
    matches = [0] * (max_n + 1)
    guesses = [0] * (max_n + 1)
    hyp_length = 0
    ref_length = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_tokens = hyp.split()
        ref_tokens = ref.split()
        hyp_length += len(hyp_tokens)
        ref_length += len(ref_tokens)
        for n in range(1, max_n + 1):
            hyp_grams = _ngram_counts(hyp_tokens, n)
            if not hyp_grams:
                continue
            ref_grams = _ngram_counts(ref_tokens, n)
            guesses[n] += sum(hyp_grams.values())
            matches[n] += sum((hyp_grams & ref_grams).values())

    precisions = tuple(
        matches[n] / guesses[n] if guesses[n] else 0.0 for n in range(1, max_n + 1)
    )
    if hyp_length == 0:
        brevity_penalty = 0.0
    elif hyp_length >= ref_length:
        brevity_penalty = 1.0
    else:
        brevity_penalty = math.exp(1.0 - ref_length / hyp_length)

    if any(p == 0.0 for p in precisions):
        score = 0.0
    else:
        log_mean = sum(math.log(p) for p in precisions) / max_n
        score = brevity_penalty * math.exp(log_mean)
    return BleuResult(
        score=score,
        precisions=precisions,
        brevity_penalty=brevity_penalty,
        hyp_length=hyp_length,
        ref_length=ref_length,
    )


@dataclass(frozen=True)
class PrfResult:
    correct: int
    incorrect: int
    no_comment: int
    precision: float
    recall: float
    f1: float

    def to_dict(self) -> dict:
        return {
            "correct": self.correct,
            "incorrect": self.incorrect,
            "no_comment": self.no_comment,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def prf_scores(labels: Iterable[str]) -> PrfResult:
    """Precision, recall, F1 from per-item judgment labels."""
    counts = Counter()
    for label in labels:
        if label not in VALID_LABELS:
            raise ValueError(f"unknown label {label!r}")
        counts[label] += 1
    c = counts[LABEL_CORRECT]
    i = counts[LABEL_INCORRECT]
    n = counts[LABEL_NO_COMMENT]
    precision = c / (c + i) if c + i else 0.0
    recall = c / (c + i + n) if c + i + n else 0.0
    if precision == recall:
        # Harmonic mean of equal values is that value; taking the formula
        # route would break the exact P == R == F1 identity in floats.
        f1 = precision
    elif precision + recall:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
    return PrfResult(
        correct=c, incorrect=i, no_comment=n,
        precision=precision, recall=recall, f1=f1,
    )


def validate_label_consistency(
    labels: dict[str, str], outputs: dict[str, str]
) -> list[str]:
    """Check that no_comment labels line up with the literal sentinel.

    Returns one message per violation; labels themselves are human
    judgments and are never second-guessed here.
    """
    problems = []
    for item_id, label in labels.items():
        if item_id not in outputs:
            problems.append(f"{item_id}: labeled but no system output present")
            continue
        is_sentinel = outputs[item_id] == NO_COMMENT
        if label == LABEL_NO_COMMENT and not is_sentinel:
            problems.append(f"{item_id}: labeled no_comment but output is a comment")
        if label != LABEL_NO_COMMENT and is_sentinel:
            problems.append(f"{item_id}: output is {NO_COMMENT} but label is {label}")
    return problems


@dataclass(frozen=True)
class PairGroup:
    text: str
    item_ids: tuple[str, ...]
    outputs: tuple[str, ...]
    all_distinct: bool


@dataclass(frozen=True)
class PairReport:
    groups: tuple[PairGroup, ...]

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    @property
    def n_all_distinct(self) -> int:
        return sum(1 for g in self.groups if g.all_distinct)

    def to_dict(self) -> dict:
        return {
            "n_groups": self.n_groups,
            "n_all_distinct": self.n_all_distinct,
            "groups": [
                {
                    "text": g.text,
                    "item_ids": list(g.item_ids),
                    "outputs": list(g.outputs),
                    "all_distinct": g.all_distinct,
                }
                for g in self.groups
            ],
        }


def paired_span_report(
    items: Iterable[tuple[str, str, str]]
) -> PairReport:
    """Group (item_id, sentence_text, output) triples by identical text.

    Sentences that occur more than once carry different error spans; the
    report flags whether the system produced pairwise-distinct outputs
    for each such group.
    """
    by_text: dict[str, list[tuple[str, str]]] = defaultdict(list)
    order: list[str] = []
    for item_id, text, output in items:
        if text not in by_text:
            order.append(text)
        by_text[text].append((item_id, output))
    groups = []
    for text in order:
        members = by_text[text]
        if len(members) < 2:
            continue
        outputs = [output for _, output in members]
        groups.append(
            PairGroup(
                text=text,
                item_ids=tuple(item_id for item_id, _ in members),
                outputs=tuple(outputs),
                all_distinct=len(set(outputs)) == len(outputs),
            )
        )
    return PairReport(groups=tuple(groups))
