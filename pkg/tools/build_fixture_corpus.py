#!/usr/bin/env python3
"""Generate the synthetic fixture corpus under tests/data/.

Deliberately independent of the package under test: token offsets,
span encodings, group sizes, and the term inventory are all computed
here by construction, then frozen to disk so the test suite can check
the library against expectations it had no hand in producing.

Outputs (all under tests/data/):
  train.tsv, train.conllu   annotated corpus + aligned parses
  dev.tsv, test.tsv         smaller splits (test.tsv has no comments)
  lexicon_golden.txt        every term embedded in < > in train comments
  expected_selection.json   group-size census and augment/skip counts

Run from the repository root:  python3 tools/build_fixture_corpus.py
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"

# ------------------------------------------------------------ skeletons
# heads are 0-based token indices, None = root.  One parse shape per
# sentence family; sentences are built by slotting words into the shape
# so the conllu file is correct by construction.

HEADS_S1 = (2, 2, None, 4, 2, 4, 4, 2, 7, 12, 12, 12, 8, 12, 15, 13, 12, 2)
HEADS_S2 = (1, None, 1, 1)
HEADS_S3 = (1, None, 1, 4, 2, 1, 1)
HEADS_S6 = (3, 3, 3, None, 6, 6, 3, 3)
HEADS_S7 = (1, None, 4, 4, 1, 1)
HEADS_S8 = (1, None, 1, 1, 5, 1, 1)


def s1(verb, they="they"):
    return [they, "can", verb, "their", "father", "or", "mother", "about",
            "money", "that", "we", "must", "use", "in", "the", "university", "too", "."]


def s2(verb, subj="i"):
    return [subj, verb, "it", "."]


def s3(prep, noun):
    return ["we", "talked", prep, "the", noun, "yesterday", "."]


def s6(noun):
    return ["my", "very", "old", noun, "stays", "in", "tokyo", "."]


def s7(noun):
    return ["he", "went", "to", "the", noun, "."]


def s8(word, noun):
    return ["she", word, "loudly", "during", "the", noun, "."]


def s8_adv(adv, noun):
    return ["she", "sang", adv, "during", "the", noun, "."]


# ------------------------------------------------------------ emission


def char_span(tokens, tok_start, tok_end):
    """Zero-based exclusive character range of tokens[tok_start:tok_end]."""
    offsets = []
    pos = 0
    for token in tokens:
        offsets.append(pos)
        pos += len(token) + 1
    start = offsets[tok_start]
    end = offsets[tok_end - 1] + len(tokens[tok_end - 1])
    return start, end


class Builder:
    def __init__(self):
        self.lines = []          # corpus lines (train)
        self.blocks = []         # conllu blocks, aligned with lines
        self.groups = Counter()  # group_key -> member count
        self.terms = set()       # every < > term embedded in a train comment
        self.conventions = Counter()

    def add(self, tokens, heads, span, comment, group_key, terms=(), convention=None):
        assert len(tokens) == len(heads)
        text = " ".join(tokens)
        start, end = char_span(tokens, *span)
        if convention is None:
            # alternate encodings; 1-char spans only exist zero-based
            convention = "one" if len(self.lines) % 2 == 1 and end - start >= 2 else "zero"
        if convention == "one":
            raw = (start + 1, end)
        else:
            raw = (start, end)
        self.conventions[convention] += 1
        self.lines.append(f"{text}\t{raw[0]}:{raw[1]}\t{comment}")
        self.blocks.append(conllu_block(tokens, heads, text))
        self.groups[group_key] += 1
        self.terms.update(terms)


def conllu_block(tokens, heads, text):
    rows = [f"# text = {text}"]
    for i, (token, head) in enumerate(zip(tokens, heads)):
        head_id = 0 if head is None else head + 1
        rel = "root" if head is None else "dep"
        rows.append(f"{i + 1}\t{token}\t_\t_\t_\t_\t{head_id}\t{rel}\t_\t_")
    return "\n".join(rows)


def build_train(b: Builder):
    # two worked-through reference lines come first
    b.add(s2("agree", subj="I"), HEADS_S2, (1, 3),
          "<<Agree>> is an <intransitive verb> and thus it requires a <preposition> before its object.",
          ("T0", "object"), terms=("intransitive verb", "preposition"), convention="one")
    b.add(s1("help", they="They"), HEADS_S1, (7, 8),
          "When <<help>> takes a direct object, add the <preposition> 'with' after it.",
          ("T1",), terms=("preposition",), convention="zero")

    # T0: intransitive-verb family; the "object" wording joins line 1's group
    verbs7 = ["listen", "apologize", "reply", "respond", "belong", "consent", "disagree"]
    for obj in ["object", "complement", "argument", "noun", "pronoun"]:
        for v in verbs7:
            b.add(s2(v), HEADS_S2, (1, 3),
                  f"<<{v.capitalize()}>> is an <intransitive verb> and thus it requires a <preposition> before its {obj}.",
                  ("T0", obj), terms=("intransitive verb", "preposition"))

    # T1: twelve members total -> crosses the skip threshold
    for v in ["support", "assist", "aid", "back", "serve", "guide",
              "advise", "coach", "tutor", "fund", "sponsor"]:
        b.add(s1(v), HEADS_S1, (7, 8),
              f"When <<{v}>> takes a direct object, add the <preposition> 'with' after it.",
              ("T1",), terms=("preposition",))

    # T_amb: the term could extend left ("auxiliary verb" is also a term),
    # so stripped brackets restore to a different, equally legal position
    modals = ["can", "will", "must", "may", "might", "should"]
    nouns_amb = ["concert", "parade", "storm", "lecture", "drill", "recital"]
    for tail in ["and needs a subject.", "and must agree.", "and takes 'not'."]:
        for w, n in zip(modals, nouns_amb):
            b.add(s8(w, n), HEADS_S8, (1, 2),
                  f"In this sentence <<{w}>> works as an auxiliary <verb> {tail}",
                  ("T_amb", tail), terms=("verb",))

    # T2: preposition choice
    pairs7 = [("about", "on"), ("with", "by"), ("for", "at"), ("of", "from"),
              ("in", "into"), ("on", "upon"), ("to", "toward")]
    nouns8 = ["weather", "game", "movie", "trip", "budget", "schedule", "contract", "menu"]
    for p, p2 in pairs7:
        for n in nouns8:
            b.add(s3(p2, n), HEADS_S3, (2, 3),
                  f"Use the <preposition> '{p}' instead of '{p2}' after this <verb>.",
                  ("T2", p, p2), terms=("preposition", "verb"))

    # T4a: missing article
    for n in ["friend", "teacher", "doctor", "lawyer", "farmer", "singer", "writer", "dancer"]:
        b.add(s6(n), HEADS_S6, (3, 4),
              f"An <article> is missing before the <singular noun> <<{n}>>.",
              ("T4a",), terms=("article", "singular noun"))

    # T4b: plural form
    for n in ["bank", "station", "office", "museum", "library", "harbor"]:
        b.add(s7(n), HEADS_S7, (4, 5),
              f"Use the <plural form> of <<{n}>> after a number.",
              ("T4b",), terms=("plural form",))

    # T5: past tense
    bads8 = ["singed", "ringed", "swimmed", "runned", "drinked", "beginned", "flied", "growed"]
    nouns8c = ["concert", "party", "parade", "festival", "wedding", "ceremony", "dinner", "picnic"]
    for tail in ["in this sentence.", "in formal writing.", "in this clause.", "after the subject."]:
        for bad, n in zip(bads8, nouns8c):
            b.add(s8(bad, n), HEADS_S8, (1, 2),
                  f"The <past tense> is needed instead of <<{bad}>> {tail}",
                  ("T5", tail), terms=("past tense",))

    # T6: identical comment on ten sentences -> second skip group
    for n in ["festival", "meeting", "election", "harvest", "deadline",
              "seminar", "banquet", "rehearsal", "audit", "census"]:
        b.add(s3("about", n), HEADS_S3, (2, 3),
              "A <comma> is needed before the <coordinating conjunction> in a compound sentence.",
              ("T6",), terms=("comma", "coordinating conjunction"))

    # T7: nine members, right at the threshold boundary (kept)
    for p in ["about", "after", "before", "without", "despite", "during", "since", "by", "near"]:
        b.add(s3(p, "evening"), HEADS_S3, (4, 5),
              f"Use a <gerund> after the <preposition> <<{p}>>.",
              ("T7",), terms=("gerund", "preposition"))

    # T8: short sentences, span on a two-character token
    verbs7b = ["need", "want", "see", "take", "like", "bring", "keep"]
    for tail in ["in this sentence.", "here.", "in the clause.", "in the answer.", "in the reply."]:
        for v in verbs7b:
            b.add(s2(v), HEADS_S2, (2, 3),
                  f"A <determiner> should come before <<it>> {tail}",
                  ("T8", tail), terms=("determiner",))

    # T9: source of the two-token term "auxiliary verb"
    nouns8d = ["bank", "station", "office", "museum", "library", "harbor", "castle", "temple"]
    for tail in ["in questions.", "in negations.", "in inversions."]:
        for n in nouns8d:
            b.add(s7(n), HEADS_S7, (2, 3),
                  f"An <auxiliary verb> is required before the <main verb> here {tail}",
                  ("T9", tail), terms=("auxiliary verb", "main verb"))

    # T10: citations of correction words that are absent from the sentence
    pairs8 = [("was", "were"), ("is", "are"), ("has", "have"), ("does", "do"),
              ("goes", "go"), ("comes", "come"), ("takes", "take"), ("makes", "make")]
    verbs8c = ["watch", "join", "call", "text", "visit", "phone", "meet", "greet"]
    for tail in ["in this sentence.", "in this clause.", "in the question.", "in the relative clause."]:
        for (a, c), v in zip(pairs8, verbs8c):
            b.add(s1(v), HEADS_S1, (8, 9),
                  f"Replace <<{a}>> with <<{c}>> when the <subject> is plural {tail}",
                  ("T10", tail), terms=("subject",))

    # T11: comments with no bracket symbols at all
    plain = [
        "The sentence is missing its main verb entirely.",
        "This word order sounds unnatural to native readers.",
        "The sentence runs on and should be split in two.",
        "This phrasing is too informal for an essay.",
        "The meaning here is unclear; rephrase the clause.",
        "This repetition weakens the argument; vary the wording.",
    ]
    for i, (n, comment) in enumerate(zip(
            ["pilot", "nurse", "critic", "editor", "barber", "tailor"], plain)):
        b.add(s6(n), HEADS_S6, (2, 3), comment, ("T11", i))

    # T12: citation-only comments; single-character span forces one encoding
    for tail in ["at the start of a sentence.", "after a full stop.", "in titles."]:
        for v in verbs7b:
            b.add(s2(v), HEADS_S2, (0, 1),
                  f"Write <<i>> as <<I>> {tail}",
                  ("T12", tail), convention="zero")

    # T13: relative pronoun
    verbs8d = ["support", "assist", "aid", "back", "serve", "guide", "advise", "coach"]
    for tail in ["here.", "in this sentence.", "after the noun.", "in the relative clause."]:
        for v in verbs8d:
            b.add(s1(v), HEADS_S1, (9, 10),
                  f"The <relative pronoun> <<that>> introduces the clause {tail}",
                  ("T13", tail), terms=("relative pronoun",))

    # T14: subordinating conjunctions, cited but absent from the sentence
    conjs8 = ["because", "although", "while", "since", "unless", "whereas", "whenever", "wherever"]
    nouns8e = ["voyage", "dinner", "match", "recital", "debate", "picnic", "hike", "tour"]
    for tail in ["after it.", "before the comma.", "at the end."]:
        for c, n in zip(conjs8, nouns8e):
            b.add(s3("about", n), HEADS_S3, (4, 5),
                  f"A <subordinating conjunction> like <<{c}>> needs a full clause {tail}",
                  ("T14", tail), terms=("subordinating conjunction",))

    # T15: quoted adverbs
    for w in ["quickly", "loudly", "barely", "nearly", "softly", "gently"]:
        for n in ["concert", "parade", "gala", "fair"]:
            b.add(s8_adv(w, n), HEADS_S8, (2, 3),
                  f"The word '{w}' is an <adverb> and cannot modify a <noun> directly.",
                  ("T15", w), terms=("adverb", "noun"))

    # T16: two more nine-member groups at the boundary
    for tail in ["in speech.", "in writing."]:
        for n in ["quiz", "survey", "poll", "exam", "test", "review", "form", "ballot", "petition"]:
            b.add(s3("about", n), HEADS_S3, (2, 3),
                  f"Use <do-support> to form the question {tail}",
                  ("T16", tail), terms=("do-support",))


def build_dev():
    b = Builder()
    # dev-only term: past participle (absent from every train comment)
    for tail in ["here.", "in this sentence.", "in the clause.", "after the subject.",
                 "in the answer.", "in the reply.", "in questions.", "in negations."]:
        b.add(s2("have"), HEADS_S2, (1, 2),
              f"Use the <past participle> after <<have>> {tail}",
              ("D1", tail), terms=("past participle",))
    for p, p2 in [("about", "on"), ("with", "by"), ("for", "at"), ("of", "from")]:
        for n in ["journey", "recipe", "lecture", "garden"]:
            b.add(s3(p2, n), HEADS_S3, (2, 3),
                  f"Use the <preposition> '{p}' instead of '{p2}' after this <verb>.",
                  ("D2", p), terms=("preposition", "verb"))
    for n in ["villa", "chapel", "tower", "bridge", "mill", "forge", "dock", "quay"]:
        b.add(s7(n), HEADS_S7, (2, 3),
              "An <auxiliary verb> is required before the <main verb> here in questions.",
              ("D3",), terms=("auxiliary verb", "main verb"))
    for w in ["swiftly", "boldly"]:
        for n in ["concert", "parade", "gala", "fair"]:
            b.add(s8_adv(w, n), HEADS_S8, (2, 3),
                  f"The word '{w}' is an <adverb> and cannot modify a <noun> directly.",
                  ("D4", w), terms=("adverb", "noun"))
    return b


def build_test_lines():
    """Prediction-time split: no comments, repeated sentences with two spans."""
    lines = []
    for v in ["help", "support", "assist", "aid", "back",
              "serve", "guide", "advise", "coach", "tutor"]:
        tokens = s1(v)
        text = " ".join(tokens)
        za, ze = char_span(tokens, 7, 8)
        oa, oe = char_span(tokens, 8, 9)
        lines.append(f"{text}\t{za}:{ze}")
        lines.append(f"{text}\t{oa + 1}:{oe}")
    for i, n in enumerate(["summit", "recess", "picnic", "parade"]):
        tokens = s3("about", n)
        text = " ".join(tokens)
        start, end = char_span(tokens, 2, 3)
        if i % 2:
            lines.append(f"{text}\t{start + 1}:{end}")
        else:
            lines.append(f"{text}\t{start}:{end}")
    return lines


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    train = Builder()
    build_train(train)

    (DATA_DIR / "train.tsv").write_text("\n".join(train.lines) + "\n", encoding="utf-8")
    (DATA_DIR / "train.conllu").write_text("\n\n".join(train.blocks) + "\n", encoding="utf-8")

    dev = build_dev()
    (DATA_DIR / "dev.tsv").write_text("\n".join(dev.lines) + "\n", encoding="utf-8")
    test_lines = build_test_lines()
    (DATA_DIR / "test.tsv").write_text("\n".join(test_lines) + "\n", encoding="utf-8")

    (DATA_DIR / "lexicon_golden.txt").write_text(
        "\n".join(sorted(train.terms)) + "\n", encoding="utf-8")

    histogram = Counter(train.groups.values())
    n_skip = sum(size for size in train.groups.values() if size >= 10)
    selection = {
        "train_lines": len(train.lines),
        "augment_samples": len(train.lines) - n_skip,
        "skip_samples": n_skip,
        "groups_by_size": {str(size): count for size, count in sorted(histogram.items())},
        "span_encodings": dict(train.conventions),
        "dev_lines": len(dev.lines),
        "test_lines": len(test_lines),
    }
    (DATA_DIR / "expected_selection.json").write_text(
        json.dumps(selection, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    print(f"train: {len(train.lines)} lines, {len(train.groups)} comment groups")
    print(f"augment {selection['augment_samples']} / skip {selection['skip_samples']}")
    print(f"terms: {len(train.terms)}; dev: {len(dev.lines)}; test: {len(test_lines)}")
    print(f"span encodings: {dict(train.conventions)}")


if __name__ == "__main__":
    main()
