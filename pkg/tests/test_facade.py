import json

import httpx
import pytest

from aplc.diagnostics import LlmNotConfigured
from aplc.facade import Backend, Compiler, CompileResponse
from aplc.llm import LlmConfig
from aplc.runner import RunPolicy


def det() -> Compiler:
    return Compiler(backend=Backend.DETERMINISTIC)


def llm_compiler(reply: str) -> Compiler:
    cfg = LlmConfig(
        endpoint_url="https://mock.invalid/v1/chat/completions",
        api_key="k",
        transport=httpx.MockTransport(lambda req: httpx.Response(
            200, json={"choices": [{"message": {"content": reply}}]})),
        backoff_base=0.0,
    )
    return Compiler(backend="llm", llm_config=cfg)


class TestBackendParse:
    def test_values(self):
        assert Backend.parse(None) is Backend.DETERMINISTIC
        assert Backend.parse("llm") is Backend.LLM
        assert Backend.parse("LLM") is Backend.LLM
        assert Backend.parse(Backend.LLM) is Backend.LLM

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            Backend.parse("quantum")


class TestCompile:
    def test_ok_shape(self):
        response = det().compile('اطبع("مرحبا")\n')
        assert response.ok
        assert 'print("مرحبا")' in response.target_text
        assert response.rename_map == []
        assert response.error is None
        assert response.warnings == []

    def test_rename_map_pairs(self):
        response = det().compile("العدد = ٥\n")
        assert response.rename_map == [("العدد", "aledd")]

    def test_empty_source(self):
        response = det().compile("")
        assert response.ok
        assert response.target_text == "# rename map\n"

    def test_lex_stage(self):
        response = det().compile("س = ٥;\n")
        assert not response.ok and response.target_text is None
        assert response.error.stage.value == "lex"
        assert response.error.span.line == 1

    def test_parse_stage(self):
        response = det().compile("اذا صحيح { }\n")
        assert response.error.stage.value == "parse"

    def test_check_stage(self):
        response = det().compile("ارجع ٥\n")
        assert response.error.stage.value == "check"
        assert response.error.message_ar

    def test_warning_surfaces(self):
        response = det().compile("اطبع(غامض)\n")
        assert response.ok
        codes = [w.code for w in response.warnings]
        assert "undefined-name" in codes


class TestCompileAndRun:
    def test_runs_arithmetic(self):
        response, result = det().compile_and_run("اطبع(٢ + ٣)\n")
        assert response.ok
        assert result.stdout == "5\n"
        assert result.exit_code == 0

    def test_error_skips_run(self):
        response, result = det().compile_and_run("والا { اطبع(١) }\n")
        assert not response.ok
        assert result is None

    def test_attachments_forwarded(self):
        source = 'اطبع(اقرا_ملف("ملف.txt"))\n'
        _, result = det().compile_and_run(source, [("ملف.txt", "نص".encode())])
        assert result.stdout == "نص\n"

    def test_policy_respected(self):
        compiler = Compiler(run_policy=RunPolicy(timeout=1.0))
        _, result = compiler.compile_and_run("طالما صحيح {\nس = ١\n}\n")
        assert result.timed_out


class TestLlmBackend:
    def test_requires_credentials(self):
        with pytest.raises(LlmNotConfigured):
            Compiler(backend=Backend.LLM,
                     llm_config=LlmConfig(endpoint_url="https://mock.invalid"))

    def test_requires_endpoint(self):
        with pytest.raises(LlmNotConfigured):
            Compiler(backend=Backend.LLM, api_key="k",
                     llm_config=LlmConfig(endpoint_url=""))

    def test_api_key_argument_wins(self):
        cfg = LlmConfig(endpoint_url="https://mock.invalid", api_key="old")
        compiler = Compiler(api_key="new", backend=Backend.LLM, llm_config=cfg)
        assert compiler.llm_config.api_key == "new"

    def test_backends_agree_on_behavior(self):
        source = "س = ٢\nاطبع(س + ٣)\n"
        _, det_result = det().compile_and_run(source)
        compiler = llm_compiler("s = 2\nprint(s + 3)")
        response, llm_result = compiler.compile_and_run(source)
        assert response.ok
        assert llm_result.stdout == det_result.stdout == "5\n"

    def test_llm_error_report_maps_to_llm_stage(self):
        compiler = llm_compiler("Syntax error: missing closing brace on line 2.")
        response = compiler.compile("اذا صحيح {\n")
        assert not response.ok
        assert response.error.stage.value == "llm"


class TestToDict:
    def test_success_shape(self):
        payload = det().compile("العدد = ١\n").to_dict()
        json.dumps(payload)
        assert payload["ok"] is True
        assert payload["error"] is None
        assert payload["rename_map"] == [["العدد", "aledd"]]

    def test_error_shape(self):
        payload = det().compile("س = ٥;\n").to_dict()
        json.dumps(payload)
        assert payload["ok"] is False
        assert payload["target_text"] is None
        assert payload["error"]["stage"] == "lex"
        assert payload["error"]["span"]["line"] == 1
        assert payload["error"]["message_ar"]

    def test_exactly_one_of_target_or_error(self):
        for source in ('اطبع("ا")\n', "س = ;\n", "ارجع ١\n", ""):
            payload = det().compile(source).to_dict()
            assert (payload["target_text"] is None) != (payload["error"] is None)

    def test_warning_serialized(self):
        payload = det().compile("اطبع(غامض)\n").to_dict()
        warning = payload["warnings"][0]
        assert warning["code"] == "undefined-name"
        assert warning["span"]["line"] == 1


class TestResponseType:
    def test_minimal_construction(self):
        response = CompileResponse(ok=True, target_text="pass\n", rename_map=[])
        assert response.warnings == []
