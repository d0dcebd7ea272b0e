"""Shared fixtures: tiny local models the adapter can load offline.

The causal and seq2seq checkpoints are built in-process from pinned
seeds, so no network or model hub is needed and every session sees
identical weights.
"""

from __future__ import annotations

from pathlib import Path

import pytest
import torch
from tokenizers import Tokenizer, decoders, models, pre_tokenizers, trainers
from transformers import (
    BartConfig,
    BartForConditionalGeneration,
    GPT2Config,
    GPT2LMHeadModel,
    PreTrainedTokenizerFast,
)

from model_adapter import AdapterConfig, create_app

REPO_ROOT = Path(__file__).resolve().parents[2]
DATA_DIR = REPO_ROOT / "tests" / "data"

BUILD_SEED = 20260816
VOCAB_SIZE = 500


def _sentence_lines() -> list[str]:
    lines = []
    for raw in (DATA_DIR / "train.tsv").read_text(encoding="utf-8").splitlines():
        lines.append(raw.split("\t")[0])
    # Span markers must be encodable for /infer sources, but keeping the
    # alphabet to characters seen here means sampled text stays printable.
    lines.append("<< word >> and < term > markers")
    return lines


def _build_tokenizer() -> PreTrainedTokenizerFast:
    tok = Tokenizer(models.BPE(unk_token="<unk>"))
    tok.pre_tokenizer = pre_tokenizers.ByteLevel(add_prefix_space=False)
    tok.decoder = decoders.ByteLevel()
    trainer = trainers.BpeTrainer(
        vocab_size=VOCAB_SIZE,
        min_frequency=1,
        special_tokens=["<|endoftext|>", "<pad>", "<unk>"],
    )
    tok.train_from_iterator(_sentence_lines(), trainer)
    return PreTrainedTokenizerFast(
        tokenizer_object=tok,
        eos_token="<|endoftext|>",
        bos_token="<|endoftext|>",
        pad_token="<pad>",
        unk_token="<unk>",
    )


def build_tiny_models(base: Path) -> tuple[Path, Path]:
    """Write loadable causal and seq2seq checkpoints under base."""
    tokenizer = _build_tokenizer()
    causal_dir = base / "tiny-causal"
    seq2seq_dir = base / "tiny-seq2seq"

    torch.manual_seed(BUILD_SEED)
    causal_cfg = GPT2Config(
        vocab_size=len(tokenizer),
        n_positions=160,
        n_embd=32,
        n_layer=2,
        n_head=2,
        bos_token_id=tokenizer.bos_token_id,
        eos_token_id=tokenizer.eos_token_id,
    )
    causal = GPT2LMHeadModel(causal_cfg)
    causal.save_pretrained(causal_dir)
    tokenizer.save_pretrained(causal_dir)

    seq_cfg = BartConfig(
        vocab_size=len(tokenizer),
        d_model=32,
        encoder_layers=2,
        decoder_layers=2,
        encoder_attention_heads=2,
        decoder_attention_heads=2,
        encoder_ffn_dim=64,
        decoder_ffn_dim=64,
        max_position_embeddings=160,
        pad_token_id=tokenizer.pad_token_id,
        bos_token_id=tokenizer.bos_token_id,
        eos_token_id=tokenizer.eos_token_id,
        decoder_start_token_id=tokenizer.eos_token_id,
    )
    seq2seq = BartForConditionalGeneration(seq_cfg)
    seq2seq.save_pretrained(seq2seq_dir)
    tokenizer.save_pretrained(seq2seq_dir)
    return causal_dir, seq2seq_dir


@pytest.fixture(scope="session")
def tiny_models(tmp_path_factory) -> dict[str, str]:
    causal_dir, seq2seq_dir = build_tiny_models(tmp_path_factory.mktemp("tiny-models"))
    return {"causal": str(causal_dir), "seq2seq": str(seq2seq_dir)}


@pytest.fixture(scope="session")
def adapter_config(tiny_models) -> AdapterConfig:
    # Capacity above the pipeline client's default in-flight limit so
    # the live augmentation run never sheds load.
    return AdapterConfig(
        model_id=tiny_models["causal"],
        infer_model_id=tiny_models["seq2seq"],
        max_concurrent=8,
    )


@pytest.fixture(scope="session")
def client(adapter_config):
    from fastapi.testclient import TestClient

    app = create_app(adapter_config)
    with TestClient(app) as c:
        yield c
