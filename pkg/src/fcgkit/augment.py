"""Corpus augmentation by clipping and LM continuation.

Training samples whose feedback comment is near-duplicated across ten
or more samples describe error types the corpus already covers densely;
those are skipped.  Every other sample gets its sentence clipped after
the error span's syntactic neighborhood, the clipped prefix goes to a
causal LM, and each accepted continuation yields a new sample carrying
the original span and comment.  Near-duplication is judged on the
normalized comment with citation regions masked, so "use <<a>> here"
and "use <<the>> here" group together.
"""

from __future__ import annotations

import hashlib
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .corpus import (
    ResolvedSpan,
    Sample,
    SpanError,
    raw_span_for_tokens,
    resolve_span,
    tokenize,
)
from .genclient import GenerationRequest, GenerationResponse
from .preprocess import MARK_CLOSE, MARK_OPEN, normalize_tokens
from .syntax import ClipResult, DepGraph, clip

logger = logging.getLogger(__name__)

GROUP_SKIP_THRESHOLD = 10
PER_SAMPLE_MIN = 8
PER_SAMPLE_MAX = 10
TOPUP_ROUNDS = 3

CITATION_MASK = "[cite]"
_TERMINATORS = ".!?"


def signature(comment: str) -> str:
    """Grouping key: normalized comment with citation regions masked."""
    tokens = normalize_tokens(comment)
    out: list[str] = []
    i = 0
    while i < len(tokens):
        if tokens[i] == MARK_OPEN:
            close = i + 1
            while close < len(tokens) and tokens[close] != MARK_CLOSE:
                close += 1
            out.append(CITATION_MASK)
            i = close + 1
        else:
            out.append(tokens[i])
            i += 1
    return " ".join(out)


@dataclass(frozen=True)
class SelectionResult:
    augment_ids: tuple[str, ...]
    skip_ids: tuple[str, ...]
    group_sizes: dict[str, int]

    @property
    def histogram(self) -> dict[int, int]:
        """How many signature groups have each size."""
        hist: dict[int, int] = defaultdict(int)
        for size in self.group_sizes.values():
            hist[size] += 1
        return dict(hist)


def select_for_augmentation(
    samples: Mapping[str, Sample], threshold: int = GROUP_SKIP_THRESHOLD
) -> SelectionResult:
    """Partition sample ids into augment and skip lists by signature group."""
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    groups: dict[str, list[str]] = defaultdict(list)
    for sample_id, sample in samples.items():
        if sample.comment is None:
            raise ValueError(f"sample {sample_id} has no comment")
        groups[signature(sample.comment)].append(sample_id)
    augment_ids: list[str] = []
    skip_ids: list[str] = []
    for members in groups.values():
        if len(members) >= threshold:
            skip_ids.extend(members)
        else:
            augment_ids.extend(members)
    selection = SelectionResult(
        augment_ids=tuple(augment_ids),
        skip_ids=tuple(skip_ids),
        group_sizes={key: len(members) for key, members in groups.items()},
    )
    assert len(selection.augment_ids) + len(selection.skip_ids) == len(samples)
    return selection


def accept_continuation(prefix: str, raw: str) -> str | None:
    """Filter one raw LM continuation; None means rejected.

    The text is cut at the first sentence terminator (kept).  Rejected:
    empty after trimming, bracket characters anywhere in the kept part,
    leftover tab/newline characters, or no terminator at all unless the
    fragment has at least 3 tokens, in which case a period is appended.
    """
    del prefix  # part of the call contract; filtering is prefix-independent
    kept = raw.strip()
    if not kept:
        return None
    for position, char in enumerate(kept):
        if char in _TERMINATORS:
            kept = kept[: position + 1]
            break
    else:
        if len(kept.split()) < 3:
            return None
        kept = kept + " ."
    if "<" in kept or ">" in kept:
        return None
    if "\t" in kept or "\n" in kept:
        return None
    return kept


def dedupe_key(continuation: str) -> str:
    return " ".join(continuation.split())


@dataclass(frozen=True)
class AugmentedSample:
    sample: Sample
    base_id: str
    continuation: str


def assemble(
    base: Sample,
    clip_result: ClipResult,
    span: ResolvedSpan,
    accepted: Sequence[str],
    base_id: str,
    cap: int = PER_SAMPLE_MAX,
) -> list[AugmentedSample]:
    """Build augmented samples from accepted continuations.

    accepted must already be deduplicated.  Output order is canonical,
    sorted by continuation digest, and capped so a sample never yields
    more than cap new lines.  The prefix is joined to the continuation
    with a space so LM punctuation cannot merge into the span's final
    token.
    """
    keys = [dedupe_key(c) for c in accepted]
    if len(set(keys)) != len(keys):
        raise ValueError("accepted continuations must be deduplicated")
    ranked = sorted(
        accepted, key=lambda c: hashlib.sha256(c.encode("utf-8")).hexdigest()
    )[:cap]
    base_tokens = [t.text.lower() for t in tokenize(base.text)]
    span_tokens = base_tokens[span.token_start : span.token_end]
    out: list[AugmentedSample] = []
    for continuation in ranked:
        text = f"{clip_result.prefix} {continuation}"
        new_tokens = text.split()
        assert text.startswith(clip_result.prefix)
        assert new_tokens[span.token_start : span.token_end] == span_tokens
        assert text[-1] in _TERMINATORS
        raw = raw_span_for_tokens(text, span.token_start, span.token_end)
        out.append(
            AugmentedSample(
                sample=Sample(text=text, raw_span=raw, comment=base.comment),
                base_id=base_id,
                continuation=continuation,
            )
        )
    return out


def derive_seed(base_seed: int, sample_id: str, round_index: int) -> int:
    digest = hashlib.sha256(f"{base_seed}\x1f{sample_id}\x1f{round_index}".encode())
    return int.from_bytes(digest.digest()[:4], "big") & 0x7FFFFFFF


@dataclass
class AugmentConfig:
    group_skip_threshold: int = GROUP_SKIP_THRESHOLD
    per_sample_min: int = PER_SAMPLE_MIN
    per_sample_max: int = PER_SAMPLE_MAX
    topup_rounds: int = TOPUP_ROUNDS
    max_new_tokens: int = 40
    temperature: float = 0.9
    seed: int = 0

    def __post_init__(self):
        if self.per_sample_min < 1 or self.per_sample_max < self.per_sample_min:
            raise ValueError("per_sample thresholds must satisfy 1 <= min <= max")
        if self.group_skip_threshold < 1:
            raise ValueError("group_skip_threshold must be at least 1")
        if self.topup_rounds < 0:
            raise ValueError("topup_rounds cannot be negative")


@dataclass(frozen=True)
class SkippedSample:
    sample_id: str
    reason: str


@dataclass
class PlannedSample:
    sample_id: str
    sample: Sample
    span: ResolvedSpan
    clip_result: ClipResult


def plan_clips(
    samples: Sequence[tuple[str, Sample]],
    graphs: Sequence[DepGraph],
    augment_ids: Iterable[str],
) -> tuple[list[PlannedSample], list[SkippedSample]]:
    """Clip every augmentable sample, skipping misaligned parses.

    samples and graphs are position-aligned (one parse block per corpus
    line, in order).  Samples whose parse disagrees with whitespace
    tokenization, or whose span cannot be resolved, are skipped with a
    reason and never force-aligned.
    """
    if len(samples) != len(graphs):
        raise ValueError(
            f"corpus/parse mismatch: {len(samples)} samples vs {len(graphs)} parses"
        )
    wanted = set(augment_ids)
    planned: list[PlannedSample] = []
    skipped: list[SkippedSample] = []
    for (sample_id, sample), graph in zip(samples, graphs):
        if sample_id not in wanted:
            continue
        tokens = [t.text.lower() for t in tokenize(sample.text)]
        if len(tokens) != len(graph.tokens):
            skipped.append(
                SkippedSample(
                    sample_id,
                    f"parse has {len(graph.tokens)} tokens, sentence has {len(tokens)}",
                )
            )
            continue
        if graph.sent_text is not None and graph.sent_text != sample.text:
            skipped.append(SkippedSample(sample_id, "parse text comment mismatch"))
            continue
        try:
            span = resolve_span(sample.text, sample.raw_span)
        except SpanError as exc:
            skipped.append(SkippedSample(sample_id, f"span unresolvable: {exc}"))
            continue
        clip_result = clip(tokens, graph, span)
        planned.append(PlannedSample(sample_id, sample, span, clip_result))
    return planned, skipped


@dataclass
class AugmentOutcome:
    augmented: list[AugmentedSample] = field(default_factory=list)
    underfilled: dict[str, int] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.augmented)


def augment_with_generator(
    planned: Sequence[PlannedSample],
    generator,
    config: AugmentConfig,
) -> AugmentOutcome:
    """Generate, filter, and assemble, topping up low-yield samples."""
    outcome = AugmentOutcome()
    for item in planned:
        accepted: dict[str, str] = {}
        rounds = 0
        while True:
            request = GenerationRequest(
                prompt=item.clip_result.prefix,
                n=config.per_sample_max,
                max_new_tokens=config.max_new_tokens,
                temperature=config.temperature,
                seed=derive_seed(config.seed, item.sample_id, rounds),
            )
            response = generator.generate(request)
            for raw in response.continuations:
                kept = accept_continuation(item.clip_result.prefix, raw)
                if kept is not None:
                    accepted.setdefault(dedupe_key(kept), kept)
            rounds += 1
            if len(accepted) >= config.per_sample_min:
                break
            if rounds > config.topup_rounds:
                outcome.underfilled[item.sample_id] = len(accepted)
                logger.warning(
                    "sample %s: only %d accepted continuations after %d rounds",
                    item.sample_id,
                    len(accepted),
                    rounds,
                )
                break
        outcome.augmented.extend(
            assemble(
                item.sample,
                item.clip_result,
                item.span,
                list(accepted.values()),
                item.sample_id,
                cap=config.per_sample_max,
            )
        )
    return outcome


def augment_from_continuations(
    planned: Sequence[PlannedSample],
    continuations_by_id: Mapping[str, Sequence[str]],
    config: AugmentConfig,
) -> AugmentOutcome:
    """Assemble from pre-generated continuations; no top-ups possible."""
    outcome = AugmentOutcome()
    for item in planned:
        accepted: dict[str, str] = {}
        for raw in continuations_by_id.get(item.sample_id, []):
            kept = accept_continuation(item.clip_result.prefix, raw)
            if kept is not None:
                accepted.setdefault(dedupe_key(kept), kept)
        if len(accepted) < config.per_sample_min:
            # Sparse imports are routine; the underfilled map is the record.
            outcome.underfilled[item.sample_id] = len(accepted)
            logger.debug(
                "sample %s: only %d accepted continuations in import",
                item.sample_id,
                len(accepted),
            )
        outcome.augmented.extend(
            assemble(
                item.sample,
                item.clip_result,
                item.span,
                list(accepted.values()),
                item.sample_id,
                cap=config.per_sample_max,
            )
        )
    return outcome
