"""LLM-as-compiler backend: chat-completion client, reply sanitizer, and the
heuristic that tells translated code apart from a reported syntax error.

The API key travels only in the Authorization header; it is masked in reprs
and never interpolated into log lines or error messages.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from .codegen import TargetSource
from .diagnostics import (
    AuthError,
    EmptyReply,
    LlmNotConfigured,
    LlmReportedSyntaxError,
    TransportError,
)
from .lexer import SourceFile

log = logging.getLogger("aplc.llm")

SYSTEM_PROMPT = (
    "This GPT specializes in translating Arabic algorithmic instructions into "
    "Python code. It accurately replaces Arabic keywords with their Python "
    "equivalents, ensures variables are named in English for runnable code, and "
    "checks for syntax correctness. If a syntax error is detected, it provides "
    "a specific error message to help users correct the issue. The output code "
    "is provided as plain text, not in Python markdown, to ensure compatibility "
    "with various text editors and environments."
)

ENV_API_KEY = "APL_LLM_API_KEY"
ENV_ENDPOINT = "APL_LLM_ENDPOINT"
ENV_MODEL = "APL_LLM_MODEL"


@dataclass
class PromptTemplate:
    system_text: str = SYSTEM_PROMPT
    user_wrapper: str = "{source}"

    def user_text(self, source_text: str) -> str:
        return self.user_wrapper.format(source=source_text)


DEFAULT_TEMPLATE = PromptTemplate()


@dataclass(repr=False)
class LlmConfig:
    endpoint_url: str = ""
    model_name: str = "gpt-4"
    api_key: str = ""
    timeout: float = 30.0
    max_retries: int = 2
    # Test seams: zero the backoff or swap the transport for a mock.
    backoff_base: float = 0.5
    transport: httpx.BaseTransport | None = field(default=None, compare=False)
    cache_dir: str | os.PathLike | None = None

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if not 0 <= self.max_retries <= 5:
            raise ValueError("max_retries must be between 0 and 5")

    def __repr__(self) -> str:
        masked = "***" if self.api_key else "''"
        return (f"LlmConfig(endpoint_url={self.endpoint_url!r}, "
                f"model_name={self.model_name!r}, api_key={masked}, "
                f"timeout={self.timeout}, max_retries={self.max_retries})")

    @classmethod
    def from_env(cls, **overrides) -> "LlmConfig":
        values = dict(
            endpoint_url=os.environ.get(ENV_ENDPOINT, ""),
            model_name=os.environ.get(ENV_MODEL, "gpt-4"),
            api_key=os.environ.get(ENV_API_KEY, ""),
        )
        values.update(overrides)
        return cls(**values)


_FENCE = re.compile(r"^\s*```")


def sanitize(raw_reply: str) -> str:
    """Strip markdown fences and any prose before the first fence. Idempotent."""
    text = raw_reply.strip()
    lines = text.split("\n")
    first = next((i for i, line in enumerate(lines) if _FENCE.match(line)), None)
    if first is None:
        return text
    closing = next((i for i in range(first + 1, len(lines)) if _FENCE.match(lines[i])), None)
    body = lines[first + 1:closing] if closing is not None else lines[first + 1:]
    return "\n".join(body).strip()


_CALL_SHAPE = re.compile(r"\w\(")
_PY_KEYWORDS = {
    "def", "if", "elif", "else", "while", "for", "return", "import", "from",
    "pass", "break", "continue", "class", "with", "try", "except", "raise",
}


def _code_shaped(line: str) -> bool:
    stripped = line.strip()
    if not stripped:
        return False
    if "=" in stripped:
        return True
    if _CALL_SHAPE.search(stripped):
        return True
    first = stripped.split()[0]
    return first in _PY_KEYWORDS


def looks_like_error_report(reply: str) -> bool:
    """Heuristic: an error marker is present and nothing looks like code."""
    lowered = reply.lower()
    if "syntax error" not in lowered and "خطأ" not in reply and "خطا" not in reply:
        return False
    return not any(_code_shaped(line) for line in reply.split("\n"))


def _cache_path(cfg: LlmConfig, source_text: str, template: PromptTemplate) -> Path | None:
    if cfg.cache_dir is None:
        return None
    key = hashlib.sha256(
        (template.system_text + "\0" + source_text + "\0" + cfg.model_name).encode("utf-8")
    ).hexdigest()
    return Path(cfg.cache_dir) / f"{key}.txt"


def _cache_store(path: Path, reply: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(reply)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _request_reply(source_text: str, cfg: LlmConfig, template: PromptTemplate) -> str:
    payload = {
        "model": cfg.model_name,
        "messages": [
            {"role": "system", "content": template.system_text},
            {"role": "user", "content": template.user_text(source_text)},
        ],
    }
    headers = {"Authorization": f"Bearer {cfg.api_key}"}
    last_detail = "no attempt made"
    with httpx.Client(transport=cfg.transport, timeout=cfg.timeout) as client:
        for attempt in range(cfg.max_retries + 1):
            if attempt:
                time.sleep(cfg.backoff_base * (2 ** (attempt - 1)))
            log.debug("POST %s model=%s attempt=%d", cfg.endpoint_url, cfg.model_name, attempt + 1)
            try:
                resp = client.post(cfg.endpoint_url, json=payload, headers=headers)
            except httpx.TransportError as exc:
                last_detail = type(exc).__name__
                log.debug("transport failure: %s", last_detail)
                continue
            if resp.status_code in (401, 403):
                raise AuthError(status=resp.status_code)
            if resp.status_code >= 500:
                last_detail = f"HTTP {resp.status_code}"
                log.debug("server failure: %s", last_detail)
                continue
            if resp.status_code != 200:
                raise TransportError(detail=f"HTTP {resp.status_code}")
            try:
                data = resp.json()
                content = data["choices"][0]["message"]["content"]
            except (json.JSONDecodeError, LookupError, TypeError):
                raise TransportError(detail="malformed completion response") from None
            if not isinstance(content, str):
                raise TransportError(detail="malformed completion response")
            return content
    raise TransportError(detail=last_detail)


def translate(source: SourceFile, cfg: LlmConfig,
              template: PromptTemplate = DEFAULT_TEMPLATE) -> TargetSource:
    """Translate APL source through the chat endpoint; returns sanitized code."""
    if not cfg.endpoint_url or not cfg.api_key:
        raise LlmNotConfigured()

    cache_file = _cache_path(cfg, source.text, template)
    raw = None
    if cache_file is not None and cache_file.exists():
        raw = cache_file.read_text(encoding="utf-8")
        log.debug("cache hit for %s", source.origin)
    if raw is None:
        raw = _request_reply(source.text, cfg, template)
        if cache_file is not None:
            _cache_store(cache_file, raw)

    text = sanitize(raw)
    if not text:
        raise EmptyReply()
    if looks_like_error_report(text):
        raise LlmReportedSyntaxError(report=text)
    return TargetSource(text=text, source_origin=source.origin)
