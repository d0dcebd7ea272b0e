"""Restoring opening brackets that generation models tend to drop.

Generated comments frequently contain the closing half of a bracket
pair only ("verbs > that follow an auxiliary verb >").  Repair walks
the token stream left to right with one balance counter per bracket
kind.  An unmatched > gets an opening < inserted before the longest
lexicon term that ends at it; an unmatched >> gets << inserted before
the longest recent token run that occurs contiguously in the learner
sentence.  Closers that cannot be resolved are reported and the text is
left unchanged at that site.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .preprocess import normalize_tokens

logger = logging.getLogger(__name__)

BRACKET_TOKENS = frozenset({"<", ">", "<<", ">>"})

KIND_TERM = "term"
KIND_CITATION = "citation"

CITATION_WINDOW = 6


@dataclass(frozen=True)
class TermLexicon:
    """Grammar terms harvested from gold comments."""

    terms: frozenset[str]
    max_tokens: int = 1

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def from_terms(cls, terms: Iterable[str]) -> "TermLexicon":
        frozen = frozenset(terms)
        max_tokens = max((len(t.split()) for t in frozen), default=1)
        return cls(terms=frozen, max_tokens=max_tokens)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for term in sorted(self.terms):
                fh.write(term + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "TermLexicon":
        with open(path, encoding="utf-8") as fh:
            terms = [line.strip() for line in fh if line.strip()]
        return cls.from_terms(terms)


def build_lexicon(comments: Iterable[str]) -> TermLexicon:
    """Collect < > term strings from gold comments.

    Comments are normalized first.  Citation regions (<< >>) are not
    terms and are skipped wholesale.  Malformed regions, such as a term
    bracket left open or a nested bracket inside a term, are logged and
    contribute nothing.
    """
    terms: set[str] = set()
    for index, comment in enumerate(comments):
        tokens = normalize_tokens(comment)
        i = 0
        while i < len(tokens):
            tok = tokens[i]
            if tok == "<<":
                close = _find(tokens, ">>", i + 1)
                if close is None:
                    logger.warning("comment %d: unclosed << region, skipped", index)
                    break
                i = close + 1
            elif tok == "<":
                close = _find(tokens, ">", i + 1)
                inner = tokens[i + 1 : close] if close is not None else None
                if inner is None:
                    logger.warning("comment %d: unclosed < region, skipped", index)
                    break
                if not inner or any(t in BRACKET_TOKENS for t in inner):
                    logger.warning(
                        "comment %d: malformed term region at token %d, skipped",
                        index,
                        i,
                    )
                    i = close + 1
                    continue
                terms.add(" ".join(inner))
                i = close + 1
            else:
                i += 1
    return TermLexicon.from_terms(terms)


def _find(tokens: Sequence[str], needle: str, start: int) -> int | None:
    for j in range(start, len(tokens)):
        if tokens[j] == needle:
            return j
    return None


def longest_term_suffix(prefix_tokens: Sequence[str], lexicon: TermLexicon) -> list[str] | None:
    """Longest lexicon term that is a token suffix of prefix_tokens.

    Preference is most tokens, then most characters, then lexicographic;
    past the token count the later tie-breaks are vacuous, because the
    suffix of a given length is a single string.
    """
    limit = min(len(prefix_tokens), lexicon.max_tokens)
    for k in range(limit, 0, -1):
        candidate = list(prefix_tokens[-k:])
        if " ".join(candidate) in lexicon:
            return candidate
    return None


@dataclass(frozen=True)
class Fix:
    position: int
    kind: str
    inserted: str


@dataclass(frozen=True)
class Unresolved:
    position: int
    kind: str


@dataclass(frozen=True)
class RepairOutcome:
    text: str
    fixes: tuple[Fix, ...] = field(default_factory=tuple)
    unresolved: tuple[Unresolved, ...] = field(default_factory=tuple)

    @property
    def changed(self) -> bool:
        return bool(self.fixes)


def repair_comment(
    generated: str,
    learner_tokens: Sequence[str],
    lexicon: TermLexicon,
    citation_window: int = CITATION_WINDOW,
) -> RepairOutcome:
    """Insert missing opening brackets into a generated comment.

    generated is normalized token text; learner_tokens are the
    lowercased tokens of the learner sentence the comment is about.
    Only opening-bracket tokens are ever inserted, so stripping bracket
    tokens from the result reproduces the bracket-stripped input.
    Fix/unresolved positions index into the input token sequence.
    """
    tokens = generated.split()
    out: list[str] = []
    fixes: list[Fix] = []
    unresolved: list[Unresolved] = []
    depth_term = 0
    depth_cite = 0

    for idx, tok in enumerate(tokens):
        if tok == "<":
            depth_term += 1
        elif tok == "<<":
            depth_cite += 1
        elif tok == ">":
            if depth_term > 0:
                depth_term -= 1
            else:
                tail = _tail_without_brackets(out)
                match = longest_term_suffix(tail, lexicon)
                if match is None:
                    unresolved.append(Unresolved(position=idx, kind=KIND_TERM))
                else:
                    out.insert(len(out) - len(match), "<")
                    fixes.append(
                        Fix(position=idx - len(match), kind=KIND_TERM, inserted="<")
                    )
        elif tok == ">>":
            if depth_cite > 0:
                depth_cite -= 1
            else:
                tail = _tail_without_brackets(out)
                match = _longest_learner_suffix(tail, learner_tokens, citation_window)
                if match is None:
                    unresolved.append(Unresolved(position=idx, kind=KIND_CITATION))
                else:
                    out.insert(len(out) - len(match), "<<")
                    fixes.append(
                        Fix(position=idx - len(match), kind=KIND_CITATION, inserted="<<")
                    )
        out.append(tok)

    return RepairOutcome(
        text=" ".join(out), fixes=tuple(fixes), unresolved=tuple(unresolved)
    )


def _tail_without_brackets(out: Sequence[str]) -> list[str]:
    """Tokens after the last bracket token; candidate regions never cross one."""
    tail: list[str] = []
    for tok in reversed(out):
        if tok in BRACKET_TOKENS:
            break
        tail.append(tok)
    tail.reverse()
    return tail


def _longest_learner_suffix(
    prefix_tokens: Sequence[str], learner_tokens: Sequence[str], window: int
) -> list[str] | None:
    limit = min(len(prefix_tokens), window)
    for k in range(limit, 0, -1):
        candidate = list(prefix_tokens[-k:])
        if _occurs_contiguously(candidate, learner_tokens):
            return candidate
    return None


def _occurs_contiguously(region: Sequence[str], tokens: Sequence[str]) -> bool:
    k = len(region)
    if k == 0 or k > len(tokens):
        return False
    return any(list(tokens[i : i + k]) == list(region) for i in range(len(tokens) - k + 1))


def strip_opening_brackets(text: str) -> str:
    """Drop < and << tokens; used to build repair test inputs."""
    return " ".join(t for t in text.split() if t not in ("<", "<<"))


def strip_bracket_tokens(text: str) -> str:
    """Drop every bracket token; the repair-invariant projection."""
    return " ".join(t for t in text.split() if t not in BRACKET_TOKENS)
