"""Dependency parses and error-span-driven sentence clipping.

Parses arrive as CoNLL-U produced by any UD-compatible parser, one
blank-line-separated block per corpus sample, in corpus order.  The
clipping rule keeps the sentence prefix up to the last word that is
syntactically connected (head or direct dependent) to the error span;
when nothing connected lies beyond the span, the sentence is cropped at
the span itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import ResolvedSpan

LAST_CONNECTED_WORD = "last-connected-word"
SPAN_END_FALLBACK = "span-end-fallback"

_CONLLU_COLUMNS = 10


class ConlluFormatError(ValueError):
    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class DepGraph:
    """One sentence's dependency graph.

    heads holds a 0-based head index per token, or None for a root.
    """

    tokens: tuple[str, ...]
    heads: tuple[int | None, ...]
    rels: tuple[str, ...]
    sent_text: str | None = None

    def __post_init__(self):
        n = len(self.tokens)
        if not (len(self.heads) == len(self.rels) == n):
            raise ValueError("tokens, heads, and rels must have equal length")
        if n == 0:
            raise ValueError("empty dependency graph")
        if not any(h is None for h in self.heads):
            raise ValueError("graph has no root")
        for i, h in enumerate(self.heads):
            if h is None:
                continue
            if not (0 <= h < n):
                raise ValueError(f"head index {h} out of range for token {i}")
            if h == i:
                raise ValueError(f"token {i} is its own head")


def parse_conllu(path: str | Path) -> list[DepGraph]:
    """Read all sentence blocks from a CoNLL-U file.

    Multiword-token ranges (ids like "3-4") and empty nodes ("3.1") are
    skipped.  A "# text = ..." comment, when present, is kept on the
    graph for alignment checks against the corpus sentence.
    """
    graphs: list[DepGraph] = []
    tokens: list[str] = []
    heads_raw: list[int] = []
    rels: list[str] = []
    sent_text: str | None = None

    def flush(line_no: int) -> None:
        nonlocal tokens, heads_raw, rels, sent_text
        if not tokens:
            return
        n = len(tokens)
        heads: list[int | None] = []
        for i, h in enumerate(heads_raw):
            if h == 0:
                heads.append(None)
            elif 1 <= h <= n:
                heads.append(h - 1)
            else:
                raise ConlluFormatError(
                    f"head {h} out of range in sentence ending here", line_no
                )
        graphs.append(
            DepGraph(
                tokens=tuple(tokens),
                heads=tuple(heads),
                rels=tuple(rels),
                sent_text=sent_text,
            )
        )
        tokens, heads_raw, rels, sent_text = [], [], [], None

    with open(path, encoding="utf-8") as fh:
        line_no = 0
        for line_no, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                flush(line_no)
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("text ="):
                    sent_text = body[len("text =") :].strip()
                continue
            cols = line.split("\t")
            if len(cols) != _CONLLU_COLUMNS:
                raise ConlluFormatError(
                    f"expected {_CONLLU_COLUMNS} tab-separated columns, got {len(cols)}",
                    line_no,
                )
            token_id = cols[0]
            if "-" in token_id or "." in token_id:
                continue
            try:
                int(token_id)
            except ValueError:
                raise ConlluFormatError(f"non-integer token id {token_id!r}", line_no)
            try:
                head = int(cols[6])
            except ValueError:
                raise ConlluFormatError(f"non-integer head {cols[6]!r}", line_no)
            tokens.append(cols[1])
            heads_raw.append(head)
            rels.append(cols[7])
        flush(line_no + 1)
    return graphs


def neighbor_set(graph: DepGraph, span: ResolvedSpan | tuple[int, int]) -> set[int]:
    """Indices of span tokens plus their heads and direct dependents.

    The ROOT sentinel is not a token and never appears in the result.
    """
    if isinstance(span, ResolvedSpan):
        start, end = span.token_start, span.token_end
    else:
        start, end = span
    n = len(graph.tokens)
    if not (0 <= start < end <= n):
        raise ValueError(f"span {start}:{end} out of range for {n} tokens")
    out: set[int] = set()
    for t in range(start, end):
        out.add(t)
        head = graph.heads[t]
        if head is not None:
            out.add(head)
    for i, head in enumerate(graph.heads):
        if head is not None and start <= head < end:
            out.add(i)
    return out


@dataclass(frozen=True)
class ClipResult:
    prefix: str
    cut_index: int
    reason: str


def clip(
    tokens: Sequence[str], graph: DepGraph, span: ResolvedSpan | tuple[int, int]
) -> ClipResult:
    """Clip a sentence after the last word connected to the error span.

    tokens are the surface tokens to build the prefix from (callers pass
    them lowercased when the prefix feeds a generation prompt); they must
    be position-aligned with graph.tokens.
    """
    if len(tokens) != len(graph.tokens):
        raise ValueError(
            f"token count mismatch: {len(tokens)} surface vs {len(graph.tokens)} parsed"
        )
    if isinstance(span, ResolvedSpan):
        end = span.token_end
    else:
        end = span[1]
    neighbors = neighbor_set(graph, span)
    last_connected = max(neighbors)
    # Span tokens are their own neighbors, so last_connected can never be
    # below end - 1; the max() keeps that as an explicit floor anyway.
    cut_index = max(last_connected, end - 1)
    reason = LAST_CONNECTED_WORD if last_connected > end - 1 else SPAN_END_FALLBACK
    prefix = " ".join(tokens[: cut_index + 1])
    return ClipResult(prefix=prefix, cut_index=cut_index, reason=reason)
