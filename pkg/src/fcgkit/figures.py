"""Report figures rendered to PNG files next to the delimited outputs.

Every helper takes already-computed numbers, draws one figure with the
Agg backend (no display needed), writes it under out_dir, and returns
the path.  Figures are a readable companion to the TSV/JSON outputs,
never the primary record.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  backend must be set first

_DPI = 150


def _finish(fig, out_dir: str | Path, name: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def group_size_histogram(group_sizes: Mapping[int, int], out_dir: str | Path) -> Path:
    """Bar chart of comment-group sizes with the skip threshold marked."""
    sizes = sorted(group_sizes)
    counts = [group_sizes[s] for s in sizes]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar([str(s) for s in sizes], counts, color="#4878a8")
    ax.axvline(x=len([s for s in sizes if s < 10]) - 0.5, color="#b04040", linestyle="--")
    ax.set_xlabel("samples sharing a comment signature")
    ax.set_ylabel("number of groups")
    ax.set_title("comment group sizes (dashed line: skip threshold)")
    return _finish(fig, out_dir, "group_size_histogram.png")


def bleu_panel(result: Mapping, out_dir: str | Path) -> Path:
    """Per-order n-gram precisions plus the corpus score."""
    precisions = list(result["ngram_precisions"])
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [f"{n}-gram" for n in range(1, len(precisions) + 1)]
    ax.bar(labels, precisions, color="#4878a8")
    ax.axhline(y=result["bleu"], color="#b04040", linestyle="--", label=f"BLEU {result['bleu']:.4f}")
    ax.set_ylim(0, 1)
    ax.set_ylabel("precision")
    ax.set_title(f"BLEU components (brevity penalty {result['brevity_penalty']:.4f})")
    ax.legend()
    return _finish(fig, out_dir, "bleu.png")


def prf_bars(result: Mapping, out_dir: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 4))
    names = ("precision", "recall", "f1")
    ax.bar(names, [result[n] for n in names], color=("#4878a8", "#5a9a68", "#b08a40"))
    ax.set_ylim(0, 1)
    ax.set_title(
        "outputs: {correct} correct, {incorrect} incorrect, {no_comment} withheld".format(**result)
    )
    return _finish(fig, out_dir, "prf.png")


def pair_variation(n_groups: int, n_all_distinct: int, out_dir: str | Path) -> Path:
    """How many identical-sentence groups got fully distinct comments."""
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(
        ("groups", "all outputs distinct"),
        (n_groups, n_all_distinct),
        color=("#4878a8", "#5a9a68"),
    )
    ax.set_ylabel("count")
    ax.set_title("identical sentences, differing spans")
    return _finish(fig, out_dir, "pairs.png")


def repair_outcomes(fixed: int, unresolved: int, untouched: int, out_dir: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(
        ("repaired", "unresolved", "already balanced"),
        (fixed, unresolved, untouched),
        color=("#5a9a68", "#b04040", "#4878a8"),
    )
    ax.set_ylabel("comments")
    ax.set_title("bracket repair outcomes")
    return _finish(fig, out_dir, "repair.png")


def clip_reasons(reasons: Mapping[str, int], out_dir: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    names = sorted(reasons)
    ax.bar(names, [reasons[n] for n in names], color="#4878a8")
    ax.set_ylabel("sentences")
    ax.set_title("clip cut-point reasons")
    return _finish(fig, out_dir, "clip_reasons.png")
