"""Reading and writing the error-annotated learner corpus.

Corpus files are UTF-8 text, one sample per line:

    sentence<TAB>start:end[<TAB>comment]

The sentence is pre-tokenized (tokens separated by single spaces, with
punctuation split off), the span field gives character offsets of the
error region, and the comment is present on train/dev lines but absent
on test lines.  Two span conventions occur in the wild: zero-based with
an exclusive end, and one-based with an inclusive end.  Which one a line
uses is detected per line by checking which reading lands exactly on
token boundaries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

ZERO_BASED_EXCLUSIVE = "zero-based-exclusive"
ONE_BASED_INCLUSIVE = "one-based-inclusive"

_SPAN_FIELD = re.compile(r"^(\d+):(\d+)$")
_TOKEN = re.compile(r"\S+")


class CorpusFormatError(ValueError):
    """A corpus line violates the TSV format."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class SpanError(ValueError):
    """Base class for span resolution failures."""


class SpanOutOfBounds(SpanError):
    """Neither reading of the raw span fits inside the sentence."""


class SpanDoesNotAlign(SpanError):
    """No reading of the raw span lands on token boundaries."""


class SpanAmbiguous(SpanError):
    """Both readings align, on different token ranges.

    Cannot occur for whitespace-separated tokens (two token start
    offsets always differ by at least two characters), but the resolver
    guards against it rather than assuming.
    """


@dataclass(frozen=True)
class Token:
    text: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class Sample:
    """One corpus line: sentence, raw character span, optional comment."""

    text: str
    raw_span: tuple[int, int]
    comment: str | None = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("sample text must be non-empty")
        if "\t" in self.text:
            raise ValueError("sample text must not contain tabs")
        start, end = self.raw_span
        if start >= end:
            raise ValueError(f"span start must precede end, got {start}:{end}")
        if self.comment is not None and "\t" in self.comment:
            raise ValueError("comment must not contain tabs")


@dataclass(frozen=True)
class ResolvedSpan:
    """Token-index form of a raw span: [token_start, token_end)."""

    token_start: int
    token_end: int
    convention: str


@dataclass(frozen=True)
class Reject:
    """A corpus line that failed parsing or span resolution."""

    line_no: int
    reason: str


def tokenize(text: str) -> list[Token]:
    """Whitespace tokens with their character offsets."""
    return [Token(m.group(), m.start(), m.end()) for m in _TOKEN.finditer(text)]


def parse_line(line: str, line_no: int | None = None) -> Sample:
    """Parse one corpus line into a Sample.

    Raises CorpusFormatError on a wrong field count, a malformed span
    field, a reversed span, or empty text/comment fields.
    """
    fields = line.split("\t")
    if len(fields) not in (2, 3):
        raise CorpusFormatError(
            f"expected 2 or 3 tab-separated fields, got {len(fields)}", line_no
        )
    text, span_field = fields[0], fields[1]
    if not text:
        raise CorpusFormatError("empty sentence field", line_no)
    m = _SPAN_FIELD.match(span_field)
    if m is None:
        raise CorpusFormatError(
            f"span field must look like <int>:<int>, got {span_field!r}", line_no
        )
    start, end = int(m.group(1)), int(m.group(2))
    if start >= end:
        raise CorpusFormatError(
            f"span start must precede end, got {start}:{end}", line_no
        )
    comment = None
    if len(fields) == 3:
        comment = fields[2]
        if not comment:
            raise CorpusFormatError("empty comment field", line_no)
    return Sample(text=text, raw_span=(start, end), comment=comment)


def write_line(sample: Sample) -> str:
    start, end = sample.raw_span
    line = f"{sample.text}\t{start}:{end}"
    if sample.comment is not None:
        line += f"\t{sample.comment}"
    return line


def resolve_span(text: str, raw_span: tuple[int, int]) -> ResolvedSpan:
    """Map a raw character span to token indices, detecting its convention.

    A reading aligns when its character range starts at the first
    character of some token and ends at the last character of some
    (equal or later) token.  Zero-based-exclusive reads the span as
    [start, end); one-based-inclusive reads it as [start-1, end).
    """
    tokens = tokenize(text)
    if not tokens:
        raise SpanOutOfBounds(f"no tokens in text for span {raw_span}")
    starts = {t.char_start: i for i, t in enumerate(tokens)}
    ends = {t.char_end: i for i, t in enumerate(tokens)}
    start, end = raw_span

    def aligned(a: int, b: int) -> tuple[int, int] | None:
        i, j = starts.get(a), ends.get(b)
        if i is not None and j is not None and i <= j:
            return i, j + 1
        return None

    candidates: list[tuple[int, int, str]] = []
    in_bounds = 0
    if 0 <= start < end <= len(text):
        in_bounds += 1
        got = aligned(start, end)
        if got:
            candidates.append((*got, ZERO_BASED_EXCLUSIVE))
    if 1 <= start < end <= len(text):
        in_bounds += 1
        got = aligned(start - 1, end)
        if got:
            candidates.append((*got, ONE_BASED_INCLUSIVE))

    if in_bounds == 0:
        raise SpanOutOfBounds(f"span {start}:{end} outside text of length {len(text)}")
    if not candidates:
        raise SpanDoesNotAlign(
            f"span {start}:{end} does not align with token boundaries under "
            "either convention"
        )
    if len(candidates) > 1 and candidates[0][:2] != candidates[1][:2]:
        raise SpanAmbiguous(
            f"span {start}:{end} aligns under both conventions with different "
            "token ranges"
        )
    token_start, token_end, convention = candidates[0]
    return ResolvedSpan(token_start, token_end, convention)


def raw_span_for_tokens(text: str, token_start: int, token_end: int) -> tuple[int, int]:
    """Zero-based-exclusive character span covering tokens [token_start, token_end)."""
    tokens = tokenize(text)
    if not (0 <= token_start < token_end <= len(tokens)):
        raise ValueError(f"token range {token_start}:{token_end} out of bounds")
    return tokens[token_start].char_start, tokens[token_end - 1].char_end


def iter_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    """Yield (line_no, line) with the trailing newline (and CR) stripped."""
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw[:-1] if raw.endswith("\n") else raw
            if line.endswith("\r"):
                line = line[:-1]
            yield line_no, line


def load_corpus(path: str | Path) -> list[Sample]:
    """Read a corpus file strictly; any malformed line raises."""
    return [parse_line(line, line_no) for line_no, line in iter_lines(path)]


def scan_corpus(path: str | Path) -> tuple[list[tuple[int, Sample]], list[Reject]]:
    """Read a corpus file leniently.

    Returns parsed (line_no, Sample) pairs plus a reject entry for every
    line that failed to parse.  Span resolution is not attempted here;
    callers that need resolved spans collect their own rejects so that
    no sample is ever silently dropped.
    """
    samples: list[tuple[int, Sample]] = []
    rejects: list[Reject] = []
    for line_no, line in iter_lines(path):
        try:
            samples.append((line_no, parse_line(line, line_no)))
        except CorpusFormatError as exc:
            rejects.append(Reject(line_no=line_no, reason=str(exc)))
    return samples, rejects


def write_corpus(samples: Iterable[Sample], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for sample in samples:
            fh.write(write_line(sample) + "\n")
