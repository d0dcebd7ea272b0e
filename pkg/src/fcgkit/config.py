"""Run configuration and run metadata.

A run is configured by an optional JSON file plus command-line
overrides; flags always win.  Unknown keys in the file are errors, not
warnings, so typos cannot silently fall back to defaults.  Every
command records a run_meta.json in its output directory with the
resolved configuration and sha256 digests of its inputs.  Metadata
carries no timestamps: rerunning a command on identical inputs must
produce byte-identical outputs.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping

from . import __version__
from .augment import AugmentConfig


class ConfigError(ValueError):
    """Bad configuration file or option values."""


@dataclass
class RunConfig:
    """Everything a pipeline command can be told.

    Path fields stay None unless a command needs them; each command
    checks its own requirements and exits with a usage error when one
    is missing.
    """

    # inputs
    train_corpus: str | None = None
    dev_corpus: str | None = None
    test_corpus: str | None = None
    train_parses: str | None = None
    lexicon: str | None = None

    # generation endpoint
    endpoint: str | None = None
    timeout: float = 60.0
    max_in_flight: int = 4
    retries: int = 3

    # decoding
    max_new_tokens: int = 40
    temperature: float = 0.9
    seed: int = 0

    # augmentation thresholds
    group_skip_threshold: int = 10
    per_sample_min: int = 8
    per_sample_max: int = 10
    topup_rounds: int = 3

    # offline stand-in for the generation service
    use_stub: bool = False
    stub_accepted: int = 9

    # repair
    citation_window: int = 6

    # training emission; no defaults, must be set when emitting stages
    epochs: int | None = None
    eval_every_steps: int | None = None
    model_id: str = "t5-large"
    shuffle_seed: int = 0

    def __post_init__(self):
        if self.timeout <= 0:
            raise ConfigError("timeout must be positive")
        if self.max_in_flight < 1:
            raise ConfigError("max_in_flight must be at least 1")
        if self.retries < 0:
            raise ConfigError("retries cannot be negative")
        if self.max_new_tokens < 1:
            raise ConfigError("max_new_tokens must be at least 1")
        if self.temperature < 0:
            raise ConfigError("temperature cannot be negative")
        if self.group_skip_threshold < 1:
            raise ConfigError("group_skip_threshold must be at least 1")
        if not 1 <= self.per_sample_min <= self.per_sample_max:
            raise ConfigError("need 1 <= per_sample_min <= per_sample_max")
        if self.topup_rounds < 0:
            raise ConfigError("topup_rounds cannot be negative")
        if self.stub_accepted < 0:
            raise ConfigError("stub_accepted cannot be negative")
        if self.citation_window < 1:
            raise ConfigError("citation_window must be at least 1")
        for name in ("epochs", "eval_every_steps"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be at least 1 when set")

    def augment_config(self) -> AugmentConfig:
        return AugmentConfig(
            group_skip_threshold=self.group_skip_threshold,
            per_sample_min=self.per_sample_min,
            per_sample_max=self.per_sample_max,
            topup_rounds=self.topup_rounds,
            max_new_tokens=self.max_new_tokens,
            temperature=self.temperature,
            seed=self.seed,
        )

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


_FIELD_NAMES = {f.name for f in fields(RunConfig)}


def load_config(path: str | Path | None, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """Merge a JSON config file (optional) with explicit overrides.

    Overrides with value None mean "not given on the command line" and
    are dropped before merging.
    """
    values: dict[str, Any] = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text("utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}")
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = sorted(set(raw) - _FIELD_NAMES)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        values.update(raw)
    for key, value in (overrides or {}).items():
        if key not in _FIELD_NAMES:
            raise ConfigError(f"unknown option: {key}")
        if value is not None:
            values[key] = value
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc))


def require_paths(config: RunConfig, *names: str) -> dict[str, Path]:
    """Check that the named path fields are set and exist."""
    found = {}
    for name in names:
        value = getattr(config, name)
        if value is None:
            raise ConfigError(f"{name} is required for this command")
        path = Path(value)
        if not path.is_file():
            raise ConfigError(f"{name} does not exist: {path}")
        found[name] = path
    return found


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_run_meta(
    out_dir: str | Path,
    command: str,
    config: RunConfig,
    inputs: Mapping[str, str | Path],
) -> Path:
    """Record what ran: command, resolved config, input digests.

    Deliberately no timestamps or hostnames, so identical runs leave
    identical metadata.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "command": command,
        "package_version": __version__,
        "config": config.to_dict(),
        "inputs": {
            name: {"path": str(p), "sha256": sha256_file(p)} for name, p in sorted(inputs.items())
        },
    }
    path = out / "run_meta.json"
    path.write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path
