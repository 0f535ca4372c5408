"""Source spans, pipeline stages, and the bilingual error catalog.

Every user-facing failure carries an English and an Arabic message; the Arabic
text ships here as a static catalog rather than being generated.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


@dataclass(frozen=True)
class Span:
    """Half-open code-point range [start, end) in normalized source text.

    `line` and `col` are 1-based and locate the first code point.
    """

    start: int
    end: int
    line: int
    col: int

    @property
    def length(self) -> int:
        return self.end - self.start

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end


class Stage(str, Enum):
    LEX = "lex"
    PARSE = "parse"
    CHECK = "check"
    LLM = "llm"


# code -> (english template, arabic template)
CATALOG: dict[str, tuple[str, str]] = {
    "invalid-encoding": (
        "source is not valid UTF-8",
        "النص المصدري ليس بترميز UTF-8 صالح",
    ),
    "unterminated-string": (
        "string literal is never closed",
        "سلسلة نصية لم تُغلق",
    ),
    "unexpected-char": (
        "unexpected character {char}",
        "رمز غير متوقع: {char}",
    ),
    "semicolon-forbidden": (
        "semicolons are forbidden: write each statement on its own line",
        "الفاصلة المنقوطة ممنوعة: اكتب كل عملية في سطر مستقل",
    ),
    "mixed-separator": (
        "numeric literal has more than one decimal separator",
        "العدد يحتوي على أكثر من فاصل عشري واحد",
    ),
    "expected-token": (
        "expected {expected}, found {found}",
        "كان المتوقع {expected} لكن وُجد {found}",
    ),
    "brace-not-last": (
        "the opening brace must be the last thing on its line",
        "القوس المعقوف الافتتاحي يجب أن يكون آخر ما في سطره",
    ),
    "empty-block": (
        "a block must contain at least one statement",
        "الكتلة يجب أن تحتوي على عملية واحدة على الأقل",
    ),
    "dangling-else": (
        "else without a matching if",
        "والا بدون اذا مقابلة",
    ),
    "bad-assign-target": (
        "cannot assign to this expression; only a name or an indexed name can be assigned",
        "لا يمكن الإسناد إلى هذا التعبير؛ يُسند فقط إلى اسم أو عنصر مفهرس",
    ),
    "keyword-in-expr": (
        "keyword {word} cannot be used inside an expression",
        "الكلمة المفتاحية {word} لا يمكن استخدامها داخل تعبير",
    ),
    "return-outside-function": (
        "return used outside a function",
        "ارجع مستخدمة خارج دالة",
    ),
    "unsupported-node": (
        "internal error: unsupported syntax tree node {node}",
        "خطأ داخلي: عقدة شجرة غير مدعومة {node}",
    ),
    "undefined-name": (
        "name {name} is never assigned",
        "الاسم {name} لم يُسند إليه شيء",
    ),
    "unknown-callee": (
        "call to undefined function {name}",
        "استدعاء دالة غير معرفة: {name}",
    ),
    "llm-transport": (
        "translation service unreachable: {detail}",
        "تعذر الوصول إلى خدمة الترجمة: {detail}",
    ),
    "llm-auth": (
        "translation service rejected the credentials (HTTP {status})",
        "رفضت خدمة الترجمة بيانات الاعتماد (HTTP {status})",
    ),
    "llm-empty-reply": (
        "translation service returned an empty reply",
        "أعادت خدمة الترجمة ردًا فارغًا",
    ),
    "llm-syntax-report": (
        "the translator reported a syntax error: {report}",
        "أبلغ المترجم عن خطأ في بناء الجملة: {report}",
    ),
    "llm-not-configured": (
        "LLM backend is not configured (missing endpoint or API key)",
        "خلفية النموذج اللغوي غير مهيأة (عنوان الخدمة أو مفتاح الوصول مفقود)",
    ),
}


class CompileError(Exception):
    """A pipeline failure with a bilingual message and an optional source span."""

    code = "internal"
    stage = Stage.LEX

    def __init__(self, span: Span | None = None, **params):
        self.span = span
        self.params = params
        super().__init__(self.message_en)

    @property
    def message_en(self) -> str:
        return CATALOG[self.code][0].format(**self.params)

    @property
    def message_ar(self) -> str:
        return CATALOG[self.code][1].format(**self.params)

    def __str__(self) -> str:
        if self.span is not None:
            return f"{self.span.line}:{self.span.col}: {self.message_en}"
        return self.message_en


# --- lexer errors ---------------------------------------------------------


class InvalidEncoding(CompileError):
    code = "invalid-encoding"


class UnterminatedString(CompileError):
    code = "unterminated-string"


class UnexpectedChar(CompileError):
    code = "unexpected-char"


class SemicolonForbidden(CompileError):
    code = "semicolon-forbidden"


class MixedSeparator(CompileError):
    code = "mixed-separator"


# --- parser errors --------------------------------------------------------


class ParseError(CompileError):
    code = "expected-token"
    stage = Stage.PARSE

    def __init__(self, span: Span | None = None, expected: list[str] | None = None, **params):
        self.expected = expected or []
        if self.code == "expected-token":
            params.setdefault("expected", " or ".join(self.expected) or "?")
            params.setdefault("found", "?")
        super().__init__(span, **params)


class BraceNotLast(ParseError):
    code = "brace-not-last"


class EmptyBlock(ParseError):
    code = "empty-block"


class DanglingElse(ParseError):
    code = "dangling-else"


class BadAssignTarget(ParseError):
    code = "bad-assign-target"


class KeywordInExpr(ParseError):
    code = "keyword-in-expr"


class ReturnOutsideFunction(CompileError):
    code = "return-outside-function"
    stage = Stage.CHECK


class UnsupportedNode(CompileError):
    code = "unsupported-node"
    stage = Stage.CHECK


# --- llm errors -----------------------------------------------------------


class LlmError(CompileError):
    stage = Stage.LLM


class TransportError(LlmError):
    code = "llm-transport"


class AuthError(LlmError):
    code = "llm-auth"


class EmptyReply(LlmError):
    code = "llm-empty-reply"


class LlmReportedSyntaxError(LlmError):
    code = "llm-syntax-report"


class LlmNotConfigured(LlmError):
    code = "llm-not-configured"


# --- runner errors (not compile stages) ------------------------------------


class RunnerError(Exception):
    pass


class InterpreterNotFound(RunnerError):
    pass


class SpawnFailure(RunnerError):
    pass


class AttachmentRejected(RunnerError):
    pass
