import json
import logging
import random

import httpx
import pytest

from aplc.diagnostics import (
    AuthError,
    EmptyReply,
    LlmNotConfigured,
    LlmReportedSyntaxError,
    TransportError,
)
from aplc.lexer import SourceFile
from aplc.llm import (
    SYSTEM_PROMPT,
    LlmConfig,
    PromptTemplate,
    looks_like_error_report,
    sanitize,
    translate,
)

import generators

KEY = "sk-super-secret-42"

# The six fixture replies for the error-report heuristic.
ERROR_REPORT_FIXTURES = [
    ("Syntax error: unexpected token '}' on line 2", True),
    ("خطأ في بناء الجملة: قوس مفقود في السطر الثالث", True),
    ("A syntax error was detected. The closing brace is missing.", True),
    ("x = 1", False),
    ('print("syntax error")', False),
    ("def f(a):\n    return a + 1", False),
]


def reply_transport(content: str, status: int = 200):
    def handler(request: httpx.Request) -> httpx.Response:
        if status != 200:
            return httpx.Response(status)
        return httpx.Response(200, json={"choices": [{"message": {"content": content}}]})

    return httpx.MockTransport(handler)


def cfg_with(transport: httpx.BaseTransport, **kw) -> LlmConfig:
    values = dict(endpoint_url="http://llm.invalid/v1/chat", api_key=KEY,
                  backoff_base=0.0, max_retries=2, transport=transport)
    values.update(kw)
    return LlmConfig(**values)


def src(text: str = "اطبع(١)\n") -> SourceFile:
    return SourceFile.from_text(text)


class TestSanitize:
    def test_plain_passthrough(self):
        assert sanitize("print(1)") == "print(1)"

    def test_fenced_with_tag(self):
        assert sanitize("```python\nx = 1\n```") == "x = 1"

    def test_leading_prose_dropped(self):
        assert sanitize("Here is the code:\n```\nx = 1\n```") == "x = 1"

    def test_unclosed_fence(self):
        assert sanitize("```py\nx = 1") == "x = 1"

    def test_idempotent_on_fuzzed_replies(self):
        rng = random.Random(407)
        for _ in range(50):
            reply = generators.rand_reply(rng)
            once = sanitize(reply)
            assert sanitize(once) == once


class TestErrorReport:
    def test_marker_without_code(self):
        assert looks_like_error_report("Syntax error: unexpected token")

    def test_assignment_is_code(self):
        assert not looks_like_error_report("x = 1")

    def test_call_parens_are_code(self):
        assert not looks_like_error_report("print('syntax error')")

    def test_fixtures(self):
        for reply, expected in ERROR_REPORT_FIXTURES:
            assert looks_like_error_report(reply) is expected, reply


class TestTranslate:
    def test_passthrough(self):
        out = translate(src(), cfg_with(reply_transport('print("hi")')))
        assert out.text == 'print("hi")'
        assert out.rename_map.entries == []

    def test_fence_stripped(self):
        out = translate(src(), cfg_with(reply_transport("```python\nprint(1)\n```")))
        assert out.text == "print(1)"

    def test_error_report_raises(self):
        message = "Syntax error: missing closing brace on line 3"
        with pytest.raises(LlmReportedSyntaxError) as err:
            translate(src(), cfg_with(reply_transport(message)))
        assert message in err.value.message_en

    def test_empty_reply(self):
        with pytest.raises(EmptyReply):
            translate(src(), cfg_with(reply_transport("   \n  ")))

    def test_malformed_payload(self):
        transport = httpx.MockTransport(
            lambda request: httpx.Response(200, json={"nope": True}))
        with pytest.raises(TransportError):
            translate(src(), cfg_with(transport))

    def test_auth_error_no_retry(self):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(401)

        with pytest.raises(AuthError) as err:
            translate(src(), cfg_with(httpx.MockTransport(handler)))
        assert len(calls) == 1
        assert KEY not in str(err.value)

    def test_retry_then_success(self):
        calls = []

        def handler(request):
            calls.append(1)
            if len(calls) < 3:
                return httpx.Response(503)
            return httpx.Response(200, json={"choices": [{"message": {"content": "x = 1"}}]})

        out = translate(src(), cfg_with(httpx.MockTransport(handler)))
        assert out.text == "x = 1" and len(calls) == 3

    def test_retries_exhausted(self):
        calls = []

        def handler(request):
            calls.append(1)
            raise httpx.ConnectError("boom")

        with pytest.raises(TransportError):
            translate(src(), cfg_with(httpx.MockTransport(handler), max_retries=1))
        assert len(calls) == 2

    def test_unconfigured(self):
        with pytest.raises(LlmNotConfigured):
            translate(src(), LlmConfig(endpoint_url="", api_key=""))

    def test_request_shape(self):
        seen = {}

        def handler(request):
            seen["headers"] = dict(request.headers)
            seen["body"] = json.loads(request.content)
            return httpx.Response(200, json={"choices": [{"message": {"content": "x = 1"}}]})

        translate(src("س = ١\n"), cfg_with(httpx.MockTransport(handler)))
        assert seen["headers"]["authorization"] == f"Bearer {KEY}"
        messages = seen["body"]["messages"]
        assert messages[0] == {"role": "system", "content": SYSTEM_PROMPT}
        assert messages[1]["content"] == "س = ١\n"

    def test_deterministic_under_mock(self):
        cfg = cfg_with(reply_transport("print(2)"))
        assert translate(src(), cfg).text == translate(src(), cfg).text


class TestSecrets:
    def test_key_never_logged(self, caplog):
        caplog.set_level(logging.DEBUG, logger="aplc.llm")
        translate(src(), cfg_with(reply_transport("x = 1")))
        with pytest.raises(AuthError):
            translate(src(), cfg_with(reply_transport("", status=403)))
        with pytest.raises(TransportError):
            translate(src(), cfg_with(reply_transport("", status=500), max_retries=0))
        for record in caplog.records:
            assert KEY not in record.getMessage()

    def test_config_repr_masks_key(self):
        cfg = LlmConfig(endpoint_url="http://x", api_key=KEY)
        assert KEY not in repr(cfg)
        assert "***" in repr(cfg)


class TestCache:
    def test_cache_avoids_second_request(self, tmp_path):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(200, json={"choices": [{"message": {"content": "x = 9"}}]})

        cfg = cfg_with(httpx.MockTransport(handler), cache_dir=tmp_path)
        first = translate(src(), cfg)
        second = translate(src(), cfg)
        assert first.text == second.text == "x = 9"
        assert len(calls) == 1
        assert list(tmp_path.glob("*.txt"))

    def test_cache_key_depends_on_model(self, tmp_path):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(200, json={"choices": [{"message": {"content": "x = 1"}}]})

        translate(src(), cfg_with(httpx.MockTransport(handler), cache_dir=tmp_path))
        translate(src(), cfg_with(httpx.MockTransport(handler), cache_dir=tmp_path,
                                  model_name="other"))
        assert len(calls) == 2


class TestConfig:
    def test_from_env(self, monkeypatch):
        monkeypatch.setenv("APL_LLM_API_KEY", "k")
        monkeypatch.setenv("APL_LLM_ENDPOINT", "http://e")
        monkeypatch.setenv("APL_LLM_MODEL", "m")
        cfg = LlmConfig.from_env()
        assert (cfg.api_key, cfg.endpoint_url, cfg.model_name) == ("k", "http://e", "m")

    def test_validation(self):
        with pytest.raises(ValueError):
            LlmConfig(timeout=0)
        with pytest.raises(ValueError):
            LlmConfig(max_retries=9)

    def test_prompt_template_wraps_source(self):
        t = PromptTemplate(user_wrapper="code:\n{source}")
        assert t.user_text("x") == "code:\nx"

    def test_system_prompt_is_fixed(self):
        assert SYSTEM_PROMPT.startswith("This GPT specializes in translating")
        assert SYSTEM_PROMPT.endswith("various text editors and environments.")
