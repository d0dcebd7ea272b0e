"""Figure helpers must write a PNG per call without a display."""

from fcgkit import figures

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _check(path):
    assert path.exists()
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_all_figures_render(tmp_path):
    _check(figures.group_size_histogram({1: 4, 9: 2, 10: 1, 12: 1}, tmp_path))
    _check(
        figures.bleu_panel(
            {
                "bleu": 0.31,
                "ngram_precisions": (0.7, 0.4, 0.3, 0.2),
                "brevity_penalty": 0.95,
            },
            tmp_path,
        )
    )
    _check(
        figures.prf_bars(
            {"precision": 0.6, "recall": 0.5, "f1": 0.55, "correct": 6, "incorrect": 4, "no_comment": 2},
            tmp_path,
        )
    )
    _check(figures.pair_variation(5, 3, tmp_path))
    _check(figures.repair_outcomes(4, 1, 20, tmp_path))
    _check(figures.clip_reasons({"last-connected-word": 9, "span-end-fallback": 2}, tmp_path))


def test_creates_out_dir(tmp_path):
    target = tmp_path / "nested" / "dir"
    path = figures.pair_variation(1, 1, target)
    assert path.parent == target
