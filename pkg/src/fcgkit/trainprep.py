"""Training-set staging: pair files and stage manifests.

Fine-tuning runs in three stages.  Stage 1 trains on the annotated
pairs, stage 2 continues from that checkpoint on the synthesized pairs,
and stage 3 continues again on the shuffled union of both with a lower
learning rate and a step cap.  This module emits the pair files (JSONL,
one {"source", "target"} object per line) and one manifest per stage
describing exactly what a trainer should do.  Emission is deterministic:
the same inputs produce byte-identical files, so manifests can be
re-generated and diffed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import jsonschema

from .corpus import Sample, resolve_span
from .preprocess import make_pair

DEFAULT_MODEL_ID = "t5-large"

BATCH_SIZE = 8
OPTIMIZER = "adam"
GRADIENT_CLIP_NORM = 1.0

# stage -> (data_role, init_from, learning_rate, max_steps)
STAGE_SETTINGS: dict[int, tuple[str, str | None, float, int | None]] = {
    1: ("initial", None, 1e-5, None),
    2: ("augmented", "stage1", 1e-5, None),
    3: ("merged", "stage2", 1e-6, 4000),
}


def load_manifest_schema() -> dict:
    text = resources.files("fcgkit").joinpath("schemas/training_manifest.json").read_text("utf-8")
    return json.loads(text)


_MANIFEST_SCHEMA = load_manifest_schema()


class ManifestError(ValueError):
    """A manifest violates the training-manifest schema."""


def validate_manifest(manifest: dict) -> None:
    try:
        jsonschema.validate(manifest, _MANIFEST_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ManifestError(str(exc)) from exc


def make_pairs(samples: Sequence[Sample]) -> list[dict[str, str]]:
    """Build source/target pairs from annotated samples, in order.

    Every sample must carry a comment and a resolvable span; staging is
    strict because the corpus passes through the lenient scanner first.
    """
    pairs = []
    for sample in samples:
        resolved = resolve_span(sample.text, sample.raw_span)
        pairs.append(make_pair(sample, resolved))
    return pairs


def merge_pairs(
    initial: Sequence[dict[str, str]],
    augmented: Sequence[dict[str, str]],
    shuffle_seed: int,
) -> list[dict[str, str]]:
    """Stage-3 data: both pair lists concatenated, then shuffled.

    The seed is recorded in the stage-3 manifest so the exact ordering
    can be reproduced.
    """
    merged = list(initial) + list(augmented)
    random.Random(shuffle_seed).shuffle(merged)
    return merged


def write_pairs(pairs: Iterable[dict[str, str]], path: str | Path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for pair in pairs:
            fh.write(json.dumps(pair, sort_keys=True, ensure_ascii=False) + "\n")
            count += 1
    return count


def read_pairs(path: str | Path) -> list[dict[str, str]]:
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line:
                pairs.append(json.loads(line))
    return pairs


def build_manifest(
    stage: int,
    data_file: str,
    pair_count: int,
    *,
    epochs: int,
    eval_every_steps: int,
    model_id: str = DEFAULT_MODEL_ID,
    eval_data_file: str | None = None,
    shuffle_seed: int | None = None,
) -> dict:
    """Manifest dict for one stage.

    epochs and eval_every_steps have no sensible universal defaults, so
    callers must choose them explicitly.  shuffle_seed is only
    meaningful for stage 3 and must be present there.
    """
    if stage not in STAGE_SETTINGS:
        raise ValueError(f"unknown stage {stage}")
    if stage == 3 and shuffle_seed is None:
        raise ValueError("stage 3 requires a shuffle_seed")
    if stage != 3 and shuffle_seed is not None:
        raise ValueError(f"stage {stage} data is not shuffled; drop shuffle_seed")
    data_role, init_from, learning_rate, max_steps = STAGE_SETTINGS[stage]
    manifest = {
        "stage": stage,
        "data_role": data_role,
        "data_file": data_file,
        "pair_count": pair_count,
        "init_from": init_from,
        "model_id": model_id,
        "hyperparameters": {
            "batch_size": BATCH_SIZE,
            "optimizer": OPTIMIZER,
            "gradient_clip_norm": GRADIENT_CLIP_NORM,
            "learning_rate": learning_rate,
            "max_steps": max_steps,
            "epochs": epochs,
            "eval_every_steps": eval_every_steps,
        },
        "eval": {"metric": "bleu", "split": "dev", "data_file": eval_data_file},
        "shuffle_seed": shuffle_seed,
    }
    validate_manifest(manifest)
    return manifest


def write_manifest(manifest: dict, path: str | Path) -> None:
    validate_manifest(manifest)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(manifest, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class StageFiles:
    """Paths written for one stage."""

    stage: int
    data_file: Path
    manifest_file: Path
    pair_count: int


def emit_stages(
    out_dir: str | Path,
    initial_samples: Sequence[Sample],
    augmented_samples: Sequence[Sample],
    *,
    epochs: int,
    eval_every_steps: int,
    shuffle_seed: int,
    model_id: str = DEFAULT_MODEL_ID,
    eval_data_file: str | None = None,
) -> list[StageFiles]:
    """Write all three stages under out_dir and return their paths.

    Data files are named stage{N}_pairs.jsonl and manifests
    stage{N}_manifest.json.  Manifests reference data files by bare
    name, so a stage directory is relocatable.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stage_pairs = {
        1: make_pairs(initial_samples),
        2: make_pairs(augmented_samples),
    }
    stage_pairs[3] = merge_pairs(stage_pairs[1], stage_pairs[2], shuffle_seed)
    written = []
    for stage in (1, 2, 3):
        data_name = f"stage{stage}_pairs.jsonl"
        data_path = out / data_name
        count = write_pairs(stage_pairs[stage], data_path)
        manifest = build_manifest(
            stage,
            data_name,
            count,
            epochs=epochs,
            eval_every_steps=eval_every_steps,
            model_id=model_id,
            eval_data_file=eval_data_file,
            shuffle_seed=shuffle_seed if stage == 3 else None,
        )
        manifest_path = out / f"stage{stage}_manifest.json"
        write_manifest(manifest, manifest_path)
        written.append(StageFiles(stage, data_path, manifest_path, count))
    return written
