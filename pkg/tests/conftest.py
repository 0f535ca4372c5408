"""Shared fixtures: the program corpus, a run helper, and a mock LLM endpoint."""
from __future__ import annotations

import http.server
import json
import threading
from dataclasses import dataclass
from pathlib import Path

import pytest

from aplc.codegen import TargetSource
from aplc.llm import LlmConfig
from aplc.runner import RunPolicy, run

DATA_DIR = Path(__file__).parent / "data"
CORPUS_DIR = DATA_DIR / "corpus"
ORACLE_DIR = CORPUS_DIR / "oracle"

# program name -> attachment file names it reads
CORPUS = [
    ("01_print", ()),
    ("02_arithmetic", ()),
    ("03_read_file", ("رسالة.txt",)),
    ("04_function", ()),
    ("05_two_vars", ()),
    ("06_list_mutation", ()),
    ("07_read_words", ("كلمات.txt",)),
]


@dataclass(frozen=True)
class CorpusProgram:
    name: str
    source: str
    oracle_text: str
    attachments: tuple[tuple[str, bytes], ...]


@pytest.fixture(scope="session")
def corpus() -> list[CorpusProgram]:
    programs = []
    for name, att_names in CORPUS:
        source = (CORPUS_DIR / f"{name}.apl").read_text(encoding="utf-8")
        oracle = (ORACLE_DIR / f"{name}.py").read_text(encoding="utf-8")
        atts = tuple((a, (CORPUS_DIR / a).read_bytes()) for a in att_names)
        programs.append(CorpusProgram(name, source, oracle, atts))
    return programs


def run_python(text: str, attachments=(), timeout: float = 10.0):
    """Execute raw Python text under the same sandbox the toolchain uses."""
    return run(TargetSource(text=text), RunPolicy(timeout=timeout), list(attachments))


class MockLlmServer:
    """Tiny chat-completion endpoint: replies keyed by the user message."""

    def __init__(self):
        outer = self

        class Handler(http.server.BaseHTTPRequestHandler):
            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                body = json.loads(self.rfile.read(length).decode("utf-8"))
                outer.requests.append({"headers": dict(self.headers), "body": body})
                if outer.status_queue:
                    code = outer.status_queue.pop(0)
                    if code != 200:
                        self.send_response(code)
                        self.end_headers()
                        return
                content = body["messages"][-1]["content"]
                reply = outer.replies.get(content, outer.default_reply)
                if reply is None:
                    self.send_response(404)
                    self.end_headers()
                    return
                data = json.dumps({"choices": [{"message": {"content": reply}}]})
                payload = data.encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

            def log_message(self, *_args):
                pass

        self.requests: list[dict] = []
        self.replies: dict[str, str] = {}
        self.default_reply: str | None = None
        self.status_queue: list[int] = []
        self.httpd = http.server.ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.url = f"http://127.0.0.1:{self.httpd.server_port}/v1/chat/completions"
        threading.Thread(target=self.httpd.serve_forever, daemon=True).start()

    def stop(self):
        self.httpd.shutdown()
        self.httpd.server_close()


@pytest.fixture
def mock_llm():
    server = MockLlmServer()
    yield server
    server.stop()


@pytest.fixture
def mock_llm_cfg(mock_llm) -> LlmConfig:
    return LlmConfig(endpoint_url=mock_llm.url, model_name="mock-model",
                     api_key="test-key-93f2", backoff_base=0.0, max_retries=2)
