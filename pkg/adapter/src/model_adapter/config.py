"""Service configuration."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_MODEL_ID = "EleutherAI/gpt-neo-1.3B"


@dataclass
class AdapterConfig:
    """Settings fixed at startup.

    model_id names the causal LM served by /generate; any local
    directory or hub identifier AutoModelForCausalLM accepts works.
    infer_model_id optionally names a sequence-to-sequence model for
    /infer; when unset, /infer falls back to prompt continuation on
    the causal model.  Decoding defaults mirror the client side and
    individual requests may override them.
    """

    model_id: str = DEFAULT_MODEL_ID
    infer_model_id: str | None = None
    device: str = "cpu"
    max_concurrent: int = 4
    max_new_tokens: int = 40
    temperature: float = 0.9

    def __post_init__(self) -> None:
        if not self.model_id:
            raise ValueError("model_id must be non-empty")
        if self.max_concurrent < 1:
            raise ValueError(f"max_concurrent must be >= 1, got {self.max_concurrent}")
        if self.max_new_tokens < 1:
            raise ValueError(f"max_new_tokens must be >= 1, got {self.max_new_tokens}")
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")
