"""The Compiler entry point tying the pipeline together.

One object, constructed with a backend choice (and an API key for the LLM
path), exposing compile and compile_and_run over either backend.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import codegen, llm, parser, runner
from .diagnostics import CompileError, LlmNotConfigured, Span, Stage
from .keywords import DEFAULT_KEYWORDS, KeywordTable
from .lexer import SourceFile, tokenize
from .parser import SemanticWarning


class Backend(enum.Enum):
    DETERMINISTIC = "deterministic"
    LLM = "llm"

    @classmethod
    def parse(cls, value: "Backend | str | None") -> "Backend":
        if value is None:
            return cls.DETERMINISTIC
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass
class ErrorInfo:
    stage: Stage
    message_en: str
    message_ar: str
    span: Span | None = None

    @classmethod
    def from_exception(cls, exc: CompileError) -> "ErrorInfo":
        return cls(exc.stage, exc.message_en, exc.message_ar, exc.span)

    def to_dict(self) -> dict:
        span = None
        if self.span is not None:
            span = {"line": self.span.line, "col": self.span.col,
                    "start": self.span.start, "end": self.span.end,
                    "length": self.span.length}
        return {"stage": self.stage.value, "message_en": self.message_en,
                "message_ar": self.message_ar, "span": span}


@dataclass
class CompileResponse:
    ok: bool
    target_text: str | None = None
    rename_map: list[tuple[str, str]] | None = None
    error: ErrorInfo | None = None
    warnings: list[SemanticWarning] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "target_text": self.target_text,
            "rename_map": [list(pair) for pair in self.rename_map]
            if self.rename_map is not None else None,
            "error": self.error.to_dict() if self.error else None,
            "warnings": [
                {"code": w.code, "message_en": w.message_en, "message_ar": w.message_ar,
                 "span": {"line": w.span.line, "col": w.span.col,
                          "start": w.span.start, "end": w.span.end,
                          "length": w.span.length} if w.span else None}
                for w in self.warnings
            ],
        }


class Compiler:
    """Compiles APL source with the chosen backend and optionally runs it."""

    def __init__(self, api_key: str | None = None,
                 backend: Backend | str = Backend.DETERMINISTIC,
                 llm_config: llm.LlmConfig | None = None,
                 run_policy: runner.RunPolicy | None = None,
                 keywords: KeywordTable = DEFAULT_KEYWORDS):
        self.backend = Backend.parse(backend)
        self.run_policy = run_policy or runner.RunPolicy()
        self.keywords = keywords
        self.llm_config: llm.LlmConfig | None = None
        if self.backend is Backend.LLM:
            cfg = llm_config or llm.LlmConfig.from_env()
            if api_key:
                cfg.api_key = api_key
            if not cfg.api_key or not cfg.endpoint_url:
                raise LlmNotConfigured()
            self.llm_config = cfg

    def _source(self, source: "str | SourceFile", origin: str) -> SourceFile:
        if isinstance(source, SourceFile):
            return source
        return SourceFile.from_text(source, origin)

    def _translate(self, src: SourceFile) -> tuple[codegen.TargetSource, list[SemanticWarning]]:
        """Raises CompileError on any stage failure."""
        if self.backend is Backend.LLM:
            return llm.translate(src, self.llm_config), []
        tokens = tokenize(src, self.keywords)
        program = parser.parse(tokens)
        warnings = parser.check(program)
        return codegen.emit(program, origin=src.origin), warnings

    def compile(self, source: "str | SourceFile", origin: str = "<memory>") -> CompileResponse:
        src = self._source(source, origin)
        try:
            target, warnings = self._translate(src)
        except CompileError as exc:
            return CompileResponse(ok=False, error=ErrorInfo.from_exception(exc))
        return CompileResponse(
            ok=True,
            target_text=target.text,
            rename_map=target.rename_map.entries,
            warnings=warnings,
        )

    def compile_and_run(self, source: "str | SourceFile",
                        attachments: list[tuple[str, bytes]] | tuple = (),
                        origin: str = "<memory>",
                        ) -> tuple[CompileResponse, runner.RunResult | None]:
        src = self._source(source, origin)
        response = self.compile(src)
        if not response.ok:
            return response, None
        target = codegen.TargetSource(text=response.target_text, source_origin=src.origin)
        result = runner.run(target, self.run_policy, attachments)
        return response, result
