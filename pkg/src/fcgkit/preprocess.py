"""Lowercasing, bracket-symbol tokenization, and error-span marking.

Comments cite learner words between << >> and name grammar terms
between < >.  Normalization lowercases the text and splits the bracket
symbols off as standalone tokens; << and >> stay atomic two-character
tokens so citations remain distinguishable from terms downstream.
Sentences get the error span wrapped in << >> marker tokens, which is
the model input format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import ResolvedSpan, Sample, tokenize

MARK_OPEN = "<<"
MARK_CLOSE = ">>"

# Longest-first: << and >> win over single brackets at the same offset.
_PIECE = re.compile(r"<<|>>|<|>|[^<>\s]+")


def normalize_tokens(comment: str) -> list[str]:
    """Token list of a normalized comment."""
    return _PIECE.findall(comment.lower())


def normalize_comment(comment: str) -> str:
    """Lowercase a comment and space-separate bracket symbols.

    "<<About>> is not the appropriate <preposition> ..." becomes
    "<< about >> is not the appropriate < preposition > ...".  Only case
    and whitespace around bracket symbols change; other characters pass
    through untouched.  Idempotent.
    """
    return " ".join(normalize_tokens(comment))


@dataclass(frozen=True)
class MarkedSentence:
    """Lowercased sentence tokens with << >> wrapped around the span."""

    tokens: tuple[str, ...]
    span: tuple[int, int]

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def mark_span(sample: Sample, resolved: ResolvedSpan) -> MarkedSentence:
    tokens = [t.text.lower() for t in tokenize(sample.text)]
    start, end = resolved.token_start, resolved.token_end
    marked = tokens[:start] + [MARK_OPEN] + tokens[start:end] + [MARK_CLOSE] + tokens[end:]
    return MarkedSentence(tokens=tuple(marked), span=(start, end))


def strip_markers(text: str) -> str:
    """Drop all << >> marker tokens; inverse of mark_span up to case."""
    return " ".join(t for t in text.split() if t not in (MARK_OPEN, MARK_CLOSE))


def make_pair(sample: Sample, resolved: ResolvedSpan) -> dict[str, str]:
    """One training pair: marked sentence in, normalized comment out."""
    if sample.comment is None:
        raise ValueError("cannot build a pair from a sample without a comment")
    return {
        "source": mark_span(sample, resolved).text,
        "target": normalize_comment(sample.comment),
    }
