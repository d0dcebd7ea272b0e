import pytest

from fcgkit.augment import (
    AugmentConfig,
    accept_continuation,
    assemble,
    augment_from_continuations,
    augment_with_generator,
    derive_seed,
    plan_clips,
    select_for_augmentation,
    signature,
)
from fcgkit.corpus import Sample, resolve_span
from fcgkit.genclient import StubGenerator
from fcgkit.syntax import ClipResult, DepGraph

PAPER_TEXT = (
    "They can help their father or mother about money that we must use in "
    "the university too ."
)
PAPER_GRAPH = DepGraph(
    tokens=tuple(PAPER_TEXT.split()),
    heads=(2, 2, None, 4, 2, 4, 4, 2, 7, 12, 12, 12, 8, 12, 15, 13, 12, 2),
    rels=("nsubj", "aux", "root", "poss", "dobj", "cc", "conj", "prep", "pobj",
          "dobj", "nsubj", "aux", "relcl", "prep", "det", "pobj", "advmod", "punct"),
)


def test_signature_masks_citations():
    a = signature("Use the <article> <<a>> before a <noun>.")
    b = signature("Use the <article> <<the>> before a <noun>.")
    assert a == b
    assert "[cite]" in a
    assert signature("Use the <article> carefully.") != a


def test_signature_distinguishes_plain_text():
    assert signature("Use 'to' after <<go>>.") != signature("Use 'for' after <<go>>.")


def _mk(comment):
    return Sample(text="w x .", raw_span=(0, 1), comment=comment)


def test_select_for_augmentation_threshold():
    samples = {}
    for i in range(10):
        samples[f"big-{i}"] = _mk(f"Same advice about <<word{i}>> here.")
    for i in range(9):
        samples[f"mid-{i}"] = _mk(f"Other advice about <<word{i}>> instead.")
    samples["solo"] = _mk("A one-off comment.")
    selection = select_for_augmentation(samples, threshold=10)
    assert set(selection.skip_ids) == {f"big-{i}" for i in range(10)}
    assert set(selection.augment_ids) == {f"mid-{i}" for i in range(9)} | {"solo"}
    assert selection.histogram == {10: 1, 9: 1, 1: 1}


def test_select_partition_is_lossless():
    samples = {f"s{i}": _mk(f"Comment number {i % 4}.") for i in range(23)}
    selection = select_for_augmentation(samples)
    assert len(selection.augment_ids) + len(selection.skip_ids) == 23
    assert set(selection.augment_ids) | set(selection.skip_ids) == set(samples)


def test_select_requires_comments():
    with pytest.raises(ValueError):
        select_for_augmentation({"x": Sample(text="a b", raw_span=(0, 1))})


def test_accept_continuation_reference_case():
    raw = (
        ", so that we can be independent. We have to work hard to earn our bread."
    )
    assert accept_continuation("prefix", raw) == ", so that we can be independent."


def test_accept_continuation_rules():
    accept = lambda raw: accept_continuation("p", raw)
    assert accept("   ") is None
    assert accept("\t\n") is None
    assert accept("contains <brackets>.") is None
    assert accept("no terminator") is None  # 2 tokens, no terminator
    assert accept("three tokens here") == "three tokens here ."
    assert accept("stops at first! and drops the rest.") == "stops at first!"
    assert accept("tab\tinside here.") is None
    assert accept(".") == "."


def _resolved(text, raw):
    return resolve_span(text, raw)


def test_assemble_builds_valid_samples():
    base = Sample(text=PAPER_TEXT, raw_span=(37, 42), comment="The comment.")
    span = _resolved(base.text, base.raw_span)
    clip_result = ClipResult(
        prefix="they can help their father or mother about money",
        cut_index=8,
        reason="last-connected-word",
    )
    accepted = [", so that we can be independent.", "because they are busy."]
    out = assemble(base, clip_result, span, accepted, "train-00002")
    assert len(out) == 2
    for item in out:
        assert item.sample.text.startswith(clip_result.prefix)
        assert item.sample.comment == "The comment."
        resolved = resolve_span(item.sample.text, item.sample.raw_span)
        assert (resolved.token_start, resolved.token_end) == (7, 8)
        assert item.sample.text.split()[7] == "about"
    # Canonical order is by continuation digest, not input order.
    rerun = assemble(base, clip_result, span, list(reversed(accepted)), "train-00002")
    assert [s.sample.text for s in rerun] == [s.sample.text for s in out]


def test_assemble_preserves_span_when_prefix_ends_at_span():
    # Fallback clip: the span's last token ends the prompt, and the
    # continuation starts with punctuation that must not merge into it.
    base = Sample(text="We talked about the weather yesterday .", raw_span=(16, 27))
    span = _resolved(base.text, base.raw_span)
    assert (span.token_start, span.token_end) == (3, 5)
    clip_result = ClipResult(
        prefix="we talked about the weather", cut_index=4, reason="span-end-fallback"
    )
    (item,) = assemble(base, clip_result, span, [", which was cold."], "x")
    tokens = item.sample.text.split()
    assert tokens[3:5] == ["the", "weather"]
    assert tokens[5] == ","


def test_assemble_caps_output():
    base = Sample(text="a b c .", raw_span=(0, 1), comment="c.")
    span = _resolved(base.text, base.raw_span)
    clip_result = ClipResult(prefix="a", cut_index=0, reason="span-end-fallback")
    accepted = [f"continuation number {i}." for i in range(12)]
    out = assemble(base, clip_result, span, accepted, "x", cap=10)
    assert len(out) == 10


def test_assemble_rejects_duplicates():
    base = Sample(text="a b c .", raw_span=(0, 1), comment="c.")
    span = _resolved(base.text, base.raw_span)
    clip_result = ClipResult(prefix="a", cut_index=0, reason="span-end-fallback")
    with pytest.raises(ValueError):
        assemble(base, clip_result, span, ["dup.", "dup."], "x")


def _paper_planned():
    samples = [
        (
            "train-00002",
            Sample(text=PAPER_TEXT, raw_span=(37, 42), comment="A comment."),
        )
    ]
    planned, skipped = plan_clips(samples, [PAPER_GRAPH], ["train-00002"])
    assert skipped == []
    return planned


def test_plan_clips_produces_paper_prefix():
    (planned,) = _paper_planned()
    assert planned.clip_result.prefix == (
        "they can help their father or mother about money"
    )


def test_plan_clips_skips_token_mismatch():
    bad_graph = DepGraph(tokens=("one", "two"), heads=(None, 0), rels=("r", "d"))
    samples = [("id-1", Sample(text="three token sent .", raw_span=(0, 5), comment="c."))]
    planned, skipped = plan_clips(samples, [bad_graph], ["id-1"])
    assert planned == []
    assert len(skipped) == 1
    assert "tokens" in skipped[0].reason


def test_plan_clips_skips_unresolvable_span():
    graph = DepGraph(tokens=("ab", "cd"), heads=(None, 0), rels=("root", "dep"))
    samples = [("id-1", Sample(text="ab cd", raw_span=(1, 3), comment="c."))]
    planned, skipped = plan_clips(samples, [graph], ["id-1"])
    assert planned == []
    assert "unresolvable" in skipped[0].reason


def test_plan_clips_requires_alignment():
    with pytest.raises(ValueError):
        plan_clips([], [PAPER_GRAPH], [])


def test_augment_with_stub_yields_nine_per_sample():
    planned = _paper_planned()
    config = AugmentConfig(seed=13)
    outcome = augment_with_generator(planned, StubGenerator(accepted_per_prompt=9), config)
    assert outcome.count == 9
    assert outcome.underfilled == {}
    texts = [a.sample.text for a in outcome.augmented]
    assert len(set(texts)) == 9
    for augmented in outcome.augmented:
        assert augmented.sample.text.split()[7] == "about"
        assert augmented.sample.comment == "A comment."


def test_augment_rerun_is_identical():
    planned = _paper_planned()
    config = AugmentConfig(seed=13)
    first = augment_with_generator(planned, StubGenerator(), config)
    second = augment_with_generator(planned, StubGenerator(), config)
    assert [a.sample for a in first.augmented] == [a.sample for a in second.augmented]


def test_augment_tops_up_until_minimum():
    planned = _paper_planned()
    config = AugmentConfig(seed=13)
    stub = StubGenerator(accepted_per_prompt=3)
    outcome = augment_with_generator(planned, stub, config)
    # 3 distinct accepted per round with fresh seeds: 9 after 3 rounds.
    assert len(stub.calls) == 3
    assert outcome.count == 9
    assert outcome.underfilled == {}
    seeds = [c.seed for c in stub.calls]
    assert len(set(seeds)) == len(seeds)


def test_augment_underfilled_is_reported():
    planned = _paper_planned()
    config = AugmentConfig(seed=13, topup_rounds=1)
    # accepted_per_prompt=1 with per-round seeds still yields few; with
    # 1 top-up round the sample cannot reach 8.
    outcome = augment_with_generator(planned, StubGenerator(accepted_per_prompt=1), config)
    assert "train-00002" in outcome.underfilled
    assert outcome.count == outcome.underfilled["train-00002"]


def test_augment_from_continuations_no_topups():
    planned = _paper_planned()
    config = AugmentConfig()
    continuations = {
        "train-00002": [f", continuation variant {i}." for i in range(9)]
    }
    outcome = augment_from_continuations(planned, continuations, config)
    assert outcome.count == 9
    assert outcome.underfilled == {}
    missing = augment_from_continuations(planned, {}, config)
    assert missing.count == 0
    assert missing.underfilled == {"train-00002": 0}


def test_derive_seed_is_stable():
    assert derive_seed(0, "train-00001", 0) == derive_seed(0, "train-00001", 0)
    assert derive_seed(0, "train-00001", 0) != derive_seed(0, "train-00001", 1)
    assert derive_seed(0, "train-00001", 0) != derive_seed(1, "train-00001", 0)
