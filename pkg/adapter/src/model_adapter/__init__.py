"""Reference HTTP service implementing the generation wire contract.

Wraps a local causal language model so the augmentation pipeline can
run live against POST /generate, and optionally a sequence-to-sequence
model behind POST /infer for end-to-end comment drafts.
"""

from model_adapter.backend import CausalBackend, Seq2SeqBackend, load_backends
from model_adapter.config import AdapterConfig
from model_adapter.app import create_app

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "CausalBackend",
    "Seq2SeqBackend",
    "create_app",
    "load_backends",
]
