"""The Arabic keyword surface and its Python target spellings.

Entries keep their display orthography (e.g. خطأ); matching happens on the
normalized form (خطا), so hamza-variant spellings reach the same keyword.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .arabic import fold_word


class Keyword(Enum):
    """Canonical keyword identities; the value is the Python target spelling."""

    PRINT = "print"
    IF = "if"
    ELIF = "elif"
    ELSE = "else"
    WHILE = "while"
    FOR = "for"
    IN = "in"
    DEF = "def"
    RETURN = "return"
    TRUE = "True"
    FALSE = "False"
    NONE = "None"
    AND = "and"
    OR = "or"
    NOT = "not"
    LEN = "len"
    RANGE = "range"
    STR = "str"
    INT = "int"
    INPUT = "input"
    READ_FILE = "read_file"

    @property
    def target(self) -> str:
        return self.value


@dataclass(frozen=True)
class KeywordEntry:
    arabic: str
    keyword: Keyword

    @property
    def target(self) -> str:
        return self.keyword.value


class KeywordTable:
    """Bijection between normalized Arabic word forms and canonical keywords."""

    def __init__(self, entries: list[KeywordEntry]):
        self.entries = list(entries)
        self._by_form: dict[str, KeywordEntry] = {}
        self._form_of: dict[Keyword, str] = {}
        for entry in self.entries:
            form = fold_word(entry.arabic)
            if form in self._by_form:
                raise ValueError(f"keyword forms collide after normalization: {entry.arabic}")
            self._by_form[form] = entry
            self._form_of.setdefault(entry.keyword, form)

    def lookup(self, normalized_word: str) -> Keyword | None:
        entry = self._by_form.get(normalized_word)
        return entry.keyword if entry else None

    def form_of(self, kw: Keyword) -> str:
        """Normalized Arabic form of a keyword (the form the lexer sees)."""
        return self._form_of[kw]

    def display_of(self, kw: Keyword) -> str:
        """Display orthography of a keyword (first entry wins)."""
        for entry in self.entries:
            if entry.keyword is kw:
                return entry.arabic
        raise KeyError(kw)

    def __len__(self) -> int:
        return len(self.entries)


DEFAULT_KEYWORDS = KeywordTable([
    KeywordEntry("اطبع", Keyword.PRINT),
    KeywordEntry("اذا", Keyword.IF),
    KeywordEntry("والا_اذا", Keyword.ELIF),
    KeywordEntry("والا", Keyword.ELSE),
    KeywordEntry("طالما", Keyword.WHILE),
    KeywordEntry("لكل", Keyword.FOR),
    KeywordEntry("في", Keyword.IN),
    KeywordEntry("دالة", Keyword.DEF),
    KeywordEntry("ارجع", Keyword.RETURN),
    KeywordEntry("صحيح", Keyword.TRUE),
    KeywordEntry("خطأ", Keyword.FALSE),
    KeywordEntry("عدم", Keyword.NONE),
    KeywordEntry("و", Keyword.AND),
    KeywordEntry("او", Keyword.OR),
    KeywordEntry("ليس", Keyword.NOT),
    KeywordEntry("طول", Keyword.LEN),
    KeywordEntry("المدى", Keyword.RANGE),
    KeywordEntry("نص", Keyword.STR),
    KeywordEntry("عدد", Keyword.INT),
    KeywordEntry("ادخل", Keyword.INPUT),
    KeywordEntry("اقرا_ملف", Keyword.READ_FILE),
])

# Keywords that act as callable builtins in expression position.
CALLABLE_KEYWORDS = frozenset({
    Keyword.PRINT,
    Keyword.LEN,
    Keyword.RANGE,
    Keyword.STR,
    Keyword.INT,
    Keyword.INPUT,
    Keyword.READ_FILE,
})

LITERAL_KEYWORDS = frozenset({Keyword.TRUE, Keyword.FALSE, Keyword.NONE})

# Normalized Arabic form -> Python builtin it compiles to.
BUILTIN_FORMS: dict[str, str] = {
    DEFAULT_KEYWORDS.form_of(kw): kw.value for kw in CALLABLE_KEYWORDS
}
