"""APL: an Arabic programming language that compiles to Python."""

from .codegen import RenameMap, TargetSource, emit, transliterate
from .diagnostics import CompileError, Span, Stage
from .facade import Backend, Compiler, CompileResponse, ErrorInfo
from .keywords import DEFAULT_KEYWORDS, Keyword, KeywordTable
from .lexer import SourceFile, Token, TokenKind, fold_digits, normalize, tokenize
from .llm import SYSTEM_PROMPT, LlmConfig, sanitize, translate
from .parser import SemanticWarning, check, parse
from .runner import RunPolicy, RunResult, run

__version__ = "0.1.0"

__all__ = [
    "Backend",
    "Compiler",
    "CompileError",
    "CompileResponse",
    "DEFAULT_KEYWORDS",
    "ErrorInfo",
    "Keyword",
    "KeywordTable",
    "LlmConfig",
    "RenameMap",
    "RunPolicy",
    "RunResult",
    "SYSTEM_PROMPT",
    "SemanticWarning",
    "SourceFile",
    "Span",
    "Stage",
    "TargetSource",
    "Token",
    "TokenKind",
    "check",
    "emit",
    "fold_digits",
    "normalize",
    "parse",
    "run",
    "sanitize",
    "tokenize",
    "translate",
    "transliterate",
]
