"""Model wrappers behind the HTTP routes.

Seeding goes through torch's process-global RNG, so every sampling
call runs under one lock: seed and generate must be atomic or two
concurrent seeded requests could interleave and break reproducibility.
"""

from __future__ import annotations

import threading

import torch
from transformers import (
    AutoModelForCausalLM,
    AutoModelForSeq2SeqLM,
    AutoTokenizer,
)

from model_adapter.config import AdapterConfig

_SAMPLING_LOCK = threading.Lock()


def _pad_id(tokenizer) -> int:
    if tokenizer.pad_token_id is not None:
        return tokenizer.pad_token_id
    return tokenizer.eos_token_id


class CausalBackend:
    """Continuation sampling on a causal LM.

    Returned strings contain only text generated after the prompt;
    the prompt tokens are sliced off before decoding.
    """

    def __init__(self, model_id: str, device: str = "cpu"):
        self.model_id = model_id
        self.device = device
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModelForCausalLM.from_pretrained(model_id).to(device)
        self.model.eval()

    def generate_continuations(
        self,
        prompt: str,
        n: int,
        max_new_tokens: int,
        temperature: float,
        seed: int | None,
    ) -> list[str]:
        encoded = self.tokenizer(prompt, return_tensors="pt").to(self.device)
        prompt_len = encoded.input_ids.shape[1]
        with _SAMPLING_LOCK, torch.no_grad():
            if seed is not None:
                torch.manual_seed(seed)
            if temperature == 0:
                # Sampling at temperature zero is undefined; serve the
                # greedy continuation replicated n times instead.
                out = self.model.generate(
                    **encoded,
                    do_sample=False,
                    max_new_tokens=max_new_tokens,
                    num_return_sequences=1,
                    pad_token_id=_pad_id(self.tokenizer),
                )
                text = self.tokenizer.decode(
                    out[0][prompt_len:], skip_special_tokens=True
                )
                return [text] * n
            out = self.model.generate(
                **encoded,
                do_sample=True,
                temperature=temperature,
                max_new_tokens=max_new_tokens,
                num_return_sequences=n,
                pad_token_id=_pad_id(self.tokenizer),
            )
        return [
            self.tokenizer.decode(row[prompt_len:], skip_special_tokens=True)
            for row in out
        ]

    def infer_comment(self, source: str, max_new_tokens: int) -> str:
        """Greedy continuation used when no seq2seq model is configured."""
        encoded = self.tokenizer(source, return_tensors="pt").to(self.device)
        prompt_len = encoded.input_ids.shape[1]
        with _SAMPLING_LOCK, torch.no_grad():
            out = self.model.generate(
                **encoded,
                do_sample=False,
                min_new_tokens=2,
                max_new_tokens=max_new_tokens,
                pad_token_id=_pad_id(self.tokenizer),
            )
        return self.tokenizer.decode(out[0][prompt_len:], skip_special_tokens=True)


class Seq2SeqBackend:
    """Greedy comment decoding on an encoder-decoder model."""

    def __init__(self, model_id: str, device: str = "cpu"):
        self.model_id = model_id
        self.device = device
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModelForSeq2SeqLM.from_pretrained(model_id).to(device)
        self.model.eval()

    def infer_comment(self, source: str, max_new_tokens: int) -> str:
        encoded = self.tokenizer(source, return_tensors="pt").to(self.device)
        with _SAMPLING_LOCK, torch.no_grad():
            out = self.model.generate(
                **encoded,
                do_sample=False,
                min_new_tokens=2,
                max_new_tokens=max_new_tokens,
                pad_token_id=_pad_id(self.tokenizer),
            )
        return self.tokenizer.decode(out[0], skip_special_tokens=True)


def load_backends(config: AdapterConfig) -> tuple[CausalBackend, object]:
    """Load the /generate model and whichever model /infer should use."""
    causal = CausalBackend(config.model_id, config.device)
    if config.infer_model_id is None:
        return causal, causal
    return causal, Seq2SeqBackend(config.infer_model_id, config.device)
