"""Config merging, validation, and run metadata."""

import json

import pytest

from fcgkit.config import (
    ConfigError,
    RunConfig,
    load_config,
    require_paths,
    sha256_file,
    write_run_meta,
)


def test_defaults_match_pipeline_constants():
    cfg = RunConfig()
    assert cfg.max_new_tokens == 40
    assert cfg.temperature == 0.9
    assert cfg.timeout == 60.0
    assert cfg.max_in_flight == 4
    assert cfg.group_skip_threshold == 10
    assert (cfg.per_sample_min, cfg.per_sample_max) == (8, 10)
    assert cfg.topup_rounds == 3
    assert cfg.model_id == "t5-large"


def test_file_then_flags_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"temperature": 0.5, "seed": 3}))
    cfg = load_config(path, {"seed": 9, "endpoint": None})
    assert cfg.temperature == 0.5
    assert cfg.seed == 9
    assert cfg.endpoint is None


def test_unknown_file_key_rejected(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"temprature": 0.5}))
    with pytest.raises(ConfigError, match="temprature"):
        load_config(path)


def test_bad_file_contents(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(ConfigError):
        load_config(missing)
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    with pytest.raises(ConfigError):
        load_config(bad)
    arr = tmp_path / "arr.json"
    arr.write_text("[1]")
    with pytest.raises(ConfigError):
        load_config(arr)


@pytest.mark.parametrize(
    "bad",
    [
        {"timeout": 0},
        {"max_in_flight": 0},
        {"retries": -1},
        {"max_new_tokens": 0},
        {"temperature": -0.1},
        {"per_sample_min": 11},
        {"group_skip_threshold": 0},
        {"epochs": 0},
        {"eval_every_steps": 0},
        {"citation_window": 0},
    ],
)
def test_value_validation(bad):
    with pytest.raises(ConfigError):
        RunConfig(**bad)


def test_augment_config_bridge():
    cfg = RunConfig(per_sample_min=2, per_sample_max=4, seed=17)
    acfg = cfg.augment_config()
    assert acfg.per_sample_min == 2
    assert acfg.per_sample_max == 4
    assert acfg.seed == 17
    assert acfg.temperature == cfg.temperature


def test_require_paths(tmp_path):
    existing = tmp_path / "train.tsv"
    existing.write_text("x\t0:1\n")
    cfg = RunConfig(train_corpus=str(existing))
    assert require_paths(cfg, "train_corpus")["train_corpus"] == existing
    with pytest.raises(ConfigError, match="dev_corpus is required"):
        require_paths(cfg, "dev_corpus")
    cfg2 = RunConfig(train_corpus=str(tmp_path / "gone.tsv"))
    with pytest.raises(ConfigError, match="does not exist"):
        require_paths(cfg2, "train_corpus")


def test_run_meta_deterministic(tmp_path):
    data = tmp_path / "in.tsv"
    data.write_text("a b\t0:1\n")
    cfg = RunConfig(train_corpus=str(data))
    meta1 = write_run_meta(tmp_path / "r1", "validate", cfg, {"train_corpus": data})
    meta2 = write_run_meta(tmp_path / "r2", "validate", cfg, {"train_corpus": data})
    assert meta1.read_bytes() == meta2.read_bytes()
    parsed = json.loads(meta1.read_text())
    assert parsed["command"] == "validate"
    assert parsed["inputs"]["train_corpus"]["sha256"] == sha256_file(data)
    assert "timestamp" not in meta1.read_text()
