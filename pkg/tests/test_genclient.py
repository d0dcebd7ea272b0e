import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import jsonschema
import pytest

from fcgkit.genclient import (
    GenerationClient,
    GenerationRequest,
    GenerationSchemaError,
    GenerationStatusError,
    GenerationTransportError,
    StubGenerator,
    export_prompts,
    import_continuations,
    load_generation_schema,
    parse_response,
)


class _ScriptedHandler(BaseHTTPRequestHandler):
    """Answers /generate from a script shared via the server object."""

    def do_POST(self):
        length = int(self.headers["Content-Length"])
        body = self.rfile.read(length)
        self.server.received_bodies.append(body)
        status, payload = self.server.script[min(len(self.server.received_bodies) - 1,
                                                 len(self.server.script) - 1)]
        data = json.dumps(payload).encode("utf-8") if payload is not None else b"not json"
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


@pytest.fixture
def scripted_server():
    server = HTTPServer(("127.0.0.1", 0), _ScriptedHandler)
    server.received_bodies = []
    server.script = [(200, {"continuations": ["ok."], "model_id": "m"})]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server
    server.shutdown()
    thread.join(timeout=5)


def _client(server, **kwargs):
    kwargs.setdefault("sleeper", lambda _: None)
    return GenerationClient(f"http://127.0.0.1:{server.server_port}", **kwargs)


def test_generate_happy_path(scripted_server):
    scripted_server.script = [
        (200, {"continuations": [", so that.", "done."], "model_id": "test-lm"})
    ]
    response = _client(scripted_server).generate(GenerationRequest(prompt="p", n=2))
    assert response.continuations == (", so that.", "done.")
    assert response.model_id == "test-lm"
    sent = json.loads(scripted_server.received_bodies[0])
    assert sent["prompt"] == "p"
    assert sent["n"] == 2
    assert sent["max_new_tokens"] == 40
    assert sent["temperature"] == 0.9


def test_generate_retries_transient_500(scripted_server):
    scripted_server.script = [
        (500, {"error": "busy"}),
        (500, {"error": "busy"}),
        (200, {"continuations": ["fine."], "model_id": "m"}),
    ]
    response = _client(scripted_server).generate(GenerationRequest(prompt="p", n=1))
    assert response.continuations == ("fine.",)
    assert len(scripted_server.received_bodies) == 3


def test_generate_gives_up_after_retry_budget(scripted_server):
    scripted_server.script = [(500, {"error": "busy"})]
    with pytest.raises(GenerationStatusError) as exc_info:
        _client(scripted_server, retries=2).generate(GenerationRequest(prompt="p", n=1))
    assert exc_info.value.status_code == 500
    assert len(scripted_server.received_bodies) == 3


def test_generate_client_error_is_not_retried(scripted_server):
    scripted_server.script = [(400, {"error": "bad request"})]
    with pytest.raises(GenerationStatusError) as exc_info:
        _client(scripted_server).generate(GenerationRequest(prompt="p", n=1))
    assert exc_info.value.status_code == 400
    assert len(scripted_server.received_bodies) == 1


def test_generate_schema_violation(scripted_server):
    scripted_server.script = [(200, {"continuations": "not-a-list", "model_id": "m"})]
    with pytest.raises(GenerationSchemaError):
        _client(scripted_server).generate(GenerationRequest(prompt="p", n=1))


def test_generate_non_json_body(scripted_server):
    scripted_server.script = [(200, None)]
    with pytest.raises(GenerationSchemaError):
        _client(scripted_server).generate(GenerationRequest(prompt="p", n=1))


def test_generate_too_many_continuations(scripted_server):
    scripted_server.script = [
        (200, {"continuations": ["a.", "b.", "c."], "model_id": "m"})
    ]
    with pytest.raises(GenerationSchemaError):
        _client(scripted_server).generate(GenerationRequest(prompt="p", n=2))


def test_connection_failure_is_transport_error():
    client = GenerationClient(
        "http://127.0.0.1:9", retries=1, sleeper=lambda _: None
    )
    with pytest.raises(GenerationTransportError):
        client.generate(GenerationRequest(prompt="p", n=1))


def test_generate_many_bounded_pool(scripted_server):
    scripted_server.script = [(200, {"continuations": ["x."], "model_id": "m"})]
    client = _client(scripted_server, max_in_flight=2)
    requests_by_id = [
        (f"id-{i}", GenerationRequest(prompt=f"prompt {i}", n=1)) for i in range(6)
    ]
    results = client.generate_many(requests_by_id)
    assert set(results) == {f"id-{i}" for i in range(6)}
    assert len(scripted_server.received_bodies) == 6


def test_wire_log_preserves_prompt_bytes(scripted_server, tmp_path):
    scripted_server.script = [(200, {"continuations": ["x."], "model_id": "m"})]
    log_path = tmp_path / "wire.jsonl"
    prompt = "they can help their father or mother about money"
    client = _client(scripted_server, wire_log=log_path)
    client.generate(GenerationRequest(prompt=prompt, n=1))
    events = [json.loads(line) for line in log_path.read_text().splitlines()]
    logged_prompt = next(
        e["payload"]["prompt"] for e in events if e["event"] == "request"
    )
    body_prompt = json.loads(scripted_server.received_bodies[0])["prompt"]
    assert logged_prompt == prompt == body_prompt


def test_request_validation():
    with pytest.raises(ValueError):
        GenerationRequest(prompt="", n=1)
    with pytest.raises(ValueError):
        GenerationRequest(prompt="p", n=0)


def test_parse_response_requires_model_id():
    with pytest.raises(GenerationSchemaError):
        parse_response({"continuations": []}, GenerationRequest(prompt="p", n=1))


def test_schema_file_is_valid_draft7():
    schema = load_generation_schema()
    jsonschema.Draft7Validator.check_schema(schema)
    assert set(schema["$defs"]) == {
        "generation_request",
        "generation_response",
        "infer_request",
        "infer_response",
    }


def test_stub_is_deterministic_and_distinct():
    stub = StubGenerator(accepted_per_prompt=9)
    request = GenerationRequest(prompt="they can help", n=10, seed=7)
    first = stub.generate(request)
    second = stub.generate(request)
    assert first.continuations == second.continuations
    accepted = first.continuations[:9]
    assert len(set(accepted)) == 9
    assert all("<" in c for c in first.continuations[9:])
    other_seed = stub.generate(GenerationRequest(prompt="they can help", n=10, seed=8))
    assert other_seed.continuations != first.continuations


def test_export_import_round_trip(tmp_path):
    plans = [
        ("train-00001", GenerationRequest(prompt="prefix one", n=10)),
        ("train-00002", GenerationRequest(prompt="prefix two", n=10)),
    ]
    out = tmp_path / "plan.jsonl"
    assert export_prompts(plans, out) == 2
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert rows[0] == {"id": "train-00001", "prompt": "prefix one", "n": 10}

    answers = tmp_path / "continuations.jsonl"
    answers.write_text(
        json.dumps({"id": "train-00001", "continuations": [", so."]}) + "\n",
        encoding="utf-8",
    )
    found, missing = import_continuations(answers, ["train-00001", "train-00002"])
    assert found == {"train-00001": [", so."]}
    assert missing == ["train-00002"]


def test_import_rejects_unknown_and_duplicate_ids(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(
        json.dumps({"id": "nope", "continuations": []}) + "\n", encoding="utf-8"
    )
    with pytest.raises(ValueError):
        import_continuations(path, ["train-00001"])
    path.write_text(
        json.dumps({"id": "a", "continuations": []})
        + "\n"
        + json.dumps({"id": "a", "continuations": []})
        + "\n",
        encoding="utf-8",
    )
    with pytest.raises(ValueError):
        import_continuations(path, ["a"])
