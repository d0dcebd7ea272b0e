"""Command line launcher: python -m model_adapter or model-adapter."""

from __future__ import annotations

import argparse
import sys

import uvicorn

from model_adapter.app import create_app
from model_adapter.config import DEFAULT_MODEL_ID, AdapterConfig


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="model-adapter",
        description="Serve a local language model behind the generation wire contract",
    )
    parser.add_argument("--model", default=DEFAULT_MODEL_ID, help="causal LM for /generate")
    parser.add_argument("--infer-model", default=None, help="seq2seq model for /infer")
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--max-concurrent", type=int, default=4)
    parser.add_argument("--max-new-tokens", type=int, default=40)
    parser.add_argument("--temperature", type=float, default=0.9)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args(argv)

    try:
        config = AdapterConfig(
            model_id=args.model,
            infer_model_id=args.infer_model,
            device=args.device,
            max_concurrent=args.max_concurrent,
            max_new_tokens=args.max_new_tokens,
            temperature=args.temperature,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    uvicorn.run(create_app(config), host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
