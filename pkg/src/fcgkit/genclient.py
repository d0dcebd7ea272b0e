"""Client side of the continuation-generation wire contract.

Generation runs against an HTTP service exposing POST /generate with
JSON bodies as pinned by schemas/generation.json.  The client keeps a
bounded number of requests in flight, retries transient failures with
exponential backoff, and validates every response against the schema.
For offline GPU hosts there is a file exchange: prompts go out as
JSONL, continuations come back keyed by the same ids, and ids that
never came back are reported rather than dropped.  A deterministic
scripted stub stands in for the service in tests and dry runs.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Protocol, Sequence

import jsonschema
import requests

DEFAULT_MAX_NEW_TOKENS = 40
DEFAULT_TEMPERATURE = 0.9
DEFAULT_TIMEOUT = 60.0
DEFAULT_MAX_IN_FLIGHT = 4
DEFAULT_RETRIES = 3


def load_generation_schema() -> dict:
    """The shared wire-contract schema committed with the package."""
    text = resources.files("fcgkit").joinpath("schemas/generation.json").read_text()
    return json.loads(text)


_SCHEMA = load_generation_schema()
_REQUEST_SCHEMA = {"$defs": _SCHEMA["$defs"], **_SCHEMA["$defs"]["generation_request"]}
_RESPONSE_SCHEMA = {"$defs": _SCHEMA["$defs"], **_SCHEMA["$defs"]["generation_response"]}


class GenerationError(Exception):
    """Base class for generation-service failures."""


class GenerationTransportError(GenerationError):
    """Could not reach the endpoint (connection failure or timeout)."""


class GenerationStatusError(GenerationError):
    """The endpoint answered with a non-2xx status."""

    def __init__(self, status_code: int, detail: str = ""):
        self.status_code = status_code
        super().__init__(f"endpoint returned HTTP {status_code}: {detail}".rstrip(": "))


class GenerationSchemaError(GenerationError):
    """The response body violates the wire schema."""


@dataclass(frozen=True)
class GenerationRequest:
    prompt: str
    n: int
    max_new_tokens: int = DEFAULT_MAX_NEW_TOKENS
    temperature: float = DEFAULT_TEMPERATURE
    seed: int | None = None

    def __post_init__(self):
        if not self.prompt:
            raise ValueError("prompt must be non-empty")
        if self.n < 1:
            raise ValueError("n must be at least 1")

    def to_payload(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GenerationResponse:
    continuations: tuple[str, ...]
    model_id: str


class Generator(Protocol):
    """Anything that can answer a GenerationRequest."""

    def generate(self, request: GenerationRequest) -> GenerationResponse: ...


def parse_response(body: object, request: GenerationRequest) -> GenerationResponse:
    """Validate a decoded /generate body and lift it to a response."""
    try:
        jsonschema.validate(body, _RESPONSE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise GenerationSchemaError(f"response violates schema: {exc.message}") from exc
    continuations = body["continuations"]
    if len(continuations) > request.n:
        raise GenerationSchemaError(
            f"got {len(continuations)} continuations for n={request.n}"
        )
    return GenerationResponse(
        continuations=tuple(continuations), model_id=body["model_id"]
    )


class GenerationClient:
    """HTTP client for the /generate contract."""

    def __init__(
        self,
        base_url: str,
        timeout: float = DEFAULT_TIMEOUT,
        max_in_flight: int = DEFAULT_MAX_IN_FLIGHT,
        retries: int = DEFAULT_RETRIES,
        backoff: float = 0.5,
        sleeper: Callable[[float], None] = time.sleep,
        wire_log: str | Path | None = None,
    ):
        if max_in_flight < 1:
            raise ValueError("max_in_flight must be at least 1")
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.max_in_flight = max_in_flight
        self.retries = retries
        self.backoff = backoff
        self._sleep = sleeper
        self._wire_log_path = Path(wire_log) if wire_log else None
        self._wire_lock = threading.Lock()

    def _log_wire(self, event: str, record: dict) -> None:
        if self._wire_log_path is None:
            return
        line = json.dumps({"event": event, **record}, ensure_ascii=False, sort_keys=True)
        with self._wire_lock:
            with open(self._wire_log_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        payload = request.to_payload()
        jsonschema.validate(payload, _REQUEST_SCHEMA)
        url = f"{self.base_url}/generate"
        self._log_wire("request", {"url": url, "payload": payload})
        attempt = 0
        while True:
            try:
                http_response = requests.post(url, json=payload, timeout=self.timeout)
            except (requests.ConnectionError, requests.Timeout) as exc:
                if attempt < self.retries:
                    self._sleep(self.backoff * (2**attempt))
                    attempt += 1
                    continue
                raise GenerationTransportError(
                    f"cannot reach {url} after {attempt + 1} attempts: {exc}"
                ) from exc
            if 500 <= http_response.status_code < 600 and attempt < self.retries:
                self._sleep(self.backoff * (2**attempt))
                attempt += 1
                continue
            break
        if not (200 <= http_response.status_code < 300):
            raise GenerationStatusError(http_response.status_code, http_response.text[:200])
        try:
            body = http_response.json()
        except ValueError as exc:
            raise GenerationSchemaError(f"response is not JSON: {exc}") from exc
        response = parse_response(body, request)
        self._log_wire("response", {"url": url, "payload": body})
        return response

    def generate_many(
        self, requests_by_id: Sequence[tuple[str, GenerationRequest]]
    ) -> dict[str, GenerationResponse]:
        """Run many requests with at most max_in_flight concurrently."""
        results: dict[str, GenerationResponse] = {}
        with ThreadPoolExecutor(max_workers=self.max_in_flight) as pool:
            futures = {
                pool.submit(self.generate, request): request_id
                for request_id, request in requests_by_id
            }
            for future, request_id in futures.items():
                results[request_id] = future.result()
        return results


# Scripted phrase pools for the stub; combinations vary with the digest
# of (prompt, seed) while the index keyed tail keeps the accepted set
# distinct within one request.
_STUB_SUBJECTS = ["they", "we", "students", "people"]
_STUB_VERBS = ["can save", "should plan", "must manage", "will earn"]
_STUB_OBJECTS = ["money", "time", "their budget", "their future"]
_STUB_TAILS = [
    "carefully",
    "together",
    "every day",
    "in the future",
    "without help",
    "at home",
    "after class",
    "with a plan",
    "one day",
    "for years",
]


@dataclass
class StubGenerator:
    """Deterministic stand-in for the generation service.

    Produces accepted_per_prompt continuations that downstream filtering
    accepts, all distinct within a request; any further requested
    continuations contain bracket characters and are filtered out.
    Output depends only on (prompt, seed, index), so reruns are
    byte-identical.
    """

    accepted_per_prompt: int = 9
    model_id: str = "stub-lm"
    calls: list[GenerationRequest] = field(default_factory=list)

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        self.calls.append(request)
        continuations = []
        for index in range(request.n):
            if index < self.accepted_per_prompt:
                continuations.append(self._accepted(request, index))
            else:
                continuations.append(f" <filler {index}>")
        return GenerationResponse(
            continuations=tuple(continuations), model_id=self.model_id
        )

    def _accepted(self, request: GenerationRequest, index: int) -> str:
        digest = hashlib.sha256(
            f"{request.prompt}\x1f{request.seed}\x1f{index}".encode("utf-8")
        ).digest()
        subject = _STUB_SUBJECTS[digest[0] % len(_STUB_SUBJECTS)]
        verb = _STUB_VERBS[digest[1] % len(_STUB_VERBS)]
        obj = _STUB_OBJECTS[digest[2] % len(_STUB_OBJECTS)]
        tail = _STUB_TAILS[index % len(_STUB_TAILS)]
        return f", so that {subject} {verb} {obj} {tail}. And the raw sample keeps going"


def export_prompts(
    plans: Iterable[tuple[str, GenerationRequest]], path: str | Path
) -> int:
    """Write {id, prompt, n} JSONL for an offline generation host."""
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for request_id, request in plans:
            fh.write(
                json.dumps(
                    {"id": request_id, "prompt": request.prompt, "n": request.n},
                    ensure_ascii=False,
                )
                + "\n"
            )
            count += 1
    return count


def import_continuations(
    path: str | Path, expected_ids: Sequence[str]
) -> tuple[dict[str, list[str]], list[str]]:
    """Read {id, continuations} JSONL written by an offline host.

    Returns the continuations keyed by id plus the list of expected ids
    that are missing from the file.  Unknown or duplicate ids and
    malformed rows raise; missing ids are the caller's to report.
    """
    expected = set(expected_ids)
    found: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except ValueError as exc:
                raise ValueError(f"line {line_no}: not valid JSON: {exc}") from exc
            if not isinstance(row, dict) or "id" not in row or "continuations" not in row:
                raise ValueError(f"line {line_no}: expected keys id, continuations")
            row_id = row["id"]
            if row_id not in expected:
                raise ValueError(f"line {line_no}: unknown id {row_id!r}")
            if row_id in found:
                raise ValueError(f"line {line_no}: duplicate id {row_id!r}")
            continuations = row["continuations"]
            if not isinstance(continuations, list) or not all(
                isinstance(c, str) for c in continuations
            ):
                raise ValueError(f"line {line_no}: continuations must be a string list")
            found[row_id] = continuations
    missing = [i for i in expected_ids if i not in found]
    return found, missing
