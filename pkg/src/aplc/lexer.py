"""Normalization and tokenization of Arabic source text.

All scanning happens in logical Unicode order; no bidi reordering anywhere.
String literal contents are copied byte-verbatim, everything else is
normalized (tatweel stripped, alef variants folded, digits folded later).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import arabic
from .diagnostics import (
    InvalidEncoding,
    MixedSeparator,
    SemicolonForbidden,
    Span,
    UnexpectedChar,
    UnterminatedString,
)
from .keywords import DEFAULT_KEYWORDS, Keyword, KeywordTable


@dataclass(frozen=True)
class SourceFile:
    """A unit of APL source: normalized text plus a display name."""

    text: str
    origin: str = "<memory>"

    @classmethod
    def from_text(cls, raw: str, origin: str = "<memory>") -> "SourceFile":
        return cls(normalize(raw), origin)

    @classmethod
    def from_bytes(cls, data: bytes, origin: str = "<memory>") -> "SourceFile":
        try:
            raw = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidEncoding(Span(exc.start, exc.start + 1, 1, exc.start + 1)) from None
        return cls.from_text(raw, origin)


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    INT_LIT = "int"
    FLOAT_LIT = "float"
    STRING_LIT = "string"
    OPERATOR = "operator"
    LBRACE = "{"
    RBRACE = "}"
    LPAREN = "("
    RPAREN = ")"
    LBRACKET = "["
    RBRACKET = "]"
    COMMA = ","
    NEWLINE = "newline"
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span
    # Folded payload: keyword identity, ASCII digits, or decoded string body.
    keyword: Keyword | None = field(default=None)
    value: str | None = field(default=None)

    def __repr__(self) -> str:
        if self.kind is TokenKind.KEYWORD:
            return f"Token({self.keyword.name}, {self.lexeme!r})"
        return f"Token({self.kind.name}, {self.lexeme!r})"


def normalize(raw: str) -> str:
    """Fold line endings, strip tatweel, fold alef variants - outside strings only.

    Idempotent. Appends a final newline to non-empty text so every statement,
    including the last, ends at a Newline token.
    """
    if raw.startswith(arabic.BOM):
        raw = raw[1:]
    raw = raw.replace("\r\n", "\n").replace("\r", "\n")

    out: list[str] = []
    CODE, STRING, COMMENT = 0, 1, 2
    state = CODE
    i = 0
    n = len(raw)
    while i < n:
        ch = raw[i]
        if state == CODE:
            if ch == arabic.TATWEEL:
                i += 1
                continue
            if ch in arabic.ALEF_VARIANTS:
                out.append(arabic.BARE_ALEF)
            elif ch == '"':
                out.append(ch)
                state = STRING
            elif ch == "#":
                out.append(ch)
                state = COMMENT
            else:
                out.append(ch)
        elif state == STRING:
            out.append(ch)
            if ch == "\\" and i + 1 < n:
                out.append(raw[i + 1])
                i += 2
                continue
            if ch == '"' or ch == "\n":
                # Unterminated strings surface at tokenize; just resync here.
                state = CODE
        else:
            out.append(ch)
            if ch == "\n":
                state = CODE
        i += 1

    text = "".join(out)
    if text and not text.endswith("\n"):
        text += "\n"
    return text


def fold_digits(lexeme: str, span: Span | None = None) -> str:
    """Fold Arabic-Indic and Eastern Arabic-Indic digits to ASCII.

    The decimal separator (ASCII '.' or U+066B) becomes '.'; more than one
    separator in a single lexeme is an error.
    """
    seps = sum(1 for ch in lexeme if ch in arabic.DECIMAL_SEPARATORS)
    if seps > 1:
        raise MixedSeparator(span, lexeme=lexeme)
    out = []
    for ch in lexeme:
        if ch in arabic.DECIMAL_SEPARATORS:
            out.append(".")
        else:
            out.append(ch.translate(arabic.DIGIT_FOLD))
    return "".join(out)


_TWO_CHAR_OPS = ("==", "!=", "<=", ">=")
_ONE_CHAR_OPS = "+-*/%=<>"


class _Scanner:
    """Cursor over normalized source with line/column bookkeeping."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def mark(self) -> tuple[int, int, int]:
        return self.pos, self.line, self.col

    def span_from(self, mark: tuple[int, int, int]) -> Span:
        start, line, col = mark
        return Span(start, self.pos, line, col)


def tokenize(src: SourceFile, keywords: KeywordTable = DEFAULT_KEYWORDS) -> list[Token]:
    """Convert normalized source text into a token stream ending in Eof."""
    sc = _Scanner(src.text)
    tokens: list[Token] = []

    def emit(kind: TokenKind, mark, **extra) -> None:
        span = sc.span_from(mark)
        tokens.append(Token(kind, src.text[span.start:span.end], span, **extra))

    while not sc.at_end():
        ch = sc.peek()
        mark = sc.mark()

        if ch == "\n":
            sc.advance()
            # Collapse blanks; never start the stream with a Newline.
            if tokens and tokens[-1].kind is not TokenKind.NEWLINE:
                emit(TokenKind.NEWLINE, mark)
            continue

        if ch in " \t":
            sc.advance()
            continue

        if ch == "#":
            # Comment text is discarded, but the no-semicolon rule still
            # applies everywhere outside strings.
            while not sc.at_end() and sc.peek() != "\n":
                pos = sc.mark()
                c = sc.advance()
                if c in (";", arabic.ARABIC_SEMICOLON):
                    raise SemicolonForbidden(sc.span_from(pos))
            continue

        if ch in (";", arabic.ARABIC_SEMICOLON):
            sc.advance()
            raise SemicolonForbidden(sc.span_from(mark))

        if ch == '"':
            sc.advance()
            body: list[str] = []
            while True:
                if sc.at_end() or sc.peek() == "\n":
                    raise UnterminatedString(sc.span_from(mark))
                c = sc.advance()
                if c == "\\":
                    if sc.at_end() or sc.peek() == "\n":
                        raise UnterminatedString(sc.span_from(mark))
                    esc = sc.advance()
                    if esc in ('"', "\\"):
                        body.append(esc)
                    else:
                        # Only \" and \\ exist; anything else stays literal.
                        body.append("\\")
                        body.append(esc)
                    continue
                if c == '"':
                    break
                body.append(c)
            emit(TokenKind.STRING_LIT, mark, value="".join(body))
            continue

        if ch in (",", arabic.ARABIC_COMMA):
            sc.advance()
            emit(TokenKind.COMMA, mark)
            continue

        if ch == "{":
            sc.advance()
            emit(TokenKind.LBRACE, mark)
            continue
        if ch == "}":
            sc.advance()
            emit(TokenKind.RBRACE, mark)
            continue
        if ch == "(":
            sc.advance()
            emit(TokenKind.LPAREN, mark)
            continue
        if ch == ")":
            sc.advance()
            emit(TokenKind.RPAREN, mark)
            continue
        if ch == "[":
            sc.advance()
            emit(TokenKind.LBRACKET, mark)
            continue
        if ch == "]":
            sc.advance()
            emit(TokenKind.RBRACKET, mark)
            continue

        if arabic.is_digit_char(ch):
            sc.advance()
            while arabic.is_digit_char(sc.peek()):
                sc.advance()
            is_float = False
            while sc.peek() in arabic.DECIMAL_SEPARATORS and arabic.is_digit_char(sc.peek(1)):
                is_float = True
                sc.advance()
                while arabic.is_digit_char(sc.peek()):
                    sc.advance()
            span = sc.span_from(mark)
            lexeme = src.text[span.start:span.end]
            folded = fold_digits(lexeme, span)
            kind = TokenKind.FLOAT_LIT if is_float else TokenKind.INT_LIT
            tokens.append(Token(kind, lexeme, span, value=folded))
            continue

        if arabic.is_word_start(ch):
            sc.advance()
            while arabic.is_word_char(sc.peek()):
                sc.advance()
            span = sc.span_from(mark)
            lexeme = src.text[span.start:span.end]
            folded = arabic.fold_word(lexeme)
            kw = keywords.lookup(folded)
            if kw is not None:
                tokens.append(Token(TokenKind.KEYWORD, lexeme, span, keyword=kw))
            else:
                tokens.append(Token(TokenKind.IDENTIFIER, lexeme, span, value=folded))
            continue

        two = src.text[sc.pos:sc.pos + 2]
        if two in _TWO_CHAR_OPS:
            sc.advance()
            sc.advance()
            emit(TokenKind.OPERATOR, mark)
            continue
        if ch in _ONE_CHAR_OPS and ch != "!":
            sc.advance()
            emit(TokenKind.OPERATOR, mark)
            continue

        sc.advance()
        raise UnexpectedChar(sc.span_from(mark), char=ch)

    tokens.append(Token(TokenKind.EOF, "", Span(sc.pos, sc.pos, sc.line, sc.col)))
    return tokens
