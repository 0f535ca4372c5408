"""Arabic script character data shared by the lexer, keyword table, and codegen."""
from __future__ import annotations

TATWEEL = "ـ"
BOM = "﻿"

# Alef with hamza above/below and alef madda fold to bare alef outside strings.
ALEF_VARIANTS = "أإآ"  # أ إ آ
BARE_ALEF = "ا"  # ا
_ALEF_FOLD = str.maketrans({v: BARE_ALEF for v in ALEF_VARIANTS})

ARABIC_INDIC_DIGITS = "٠١٢٣٤٥٦٧٨٩"  # ٠١٢٣٤٥٦٧٨٩
EASTERN_ARABIC_DIGITS = "۰۱۲۳۴۵۶۷۸۹"  # ۰۱۲۳۴۵۶۷۸۹
ASCII_DIGITS = "0123456789"

DIGIT_FOLD = str.maketrans(ARABIC_INDIC_DIGITS + EASTERN_ARABIC_DIGITS, ASCII_DIGITS * 2)

ARABIC_DECIMAL_SEPARATOR = "٫"  # ٫
ARABIC_COMMA = "،"  # ،
ARABIC_SEMICOLON = "؛"  # ؛

DECIMAL_SEPARATORS = "." + ARABIC_DECIMAL_SEPARATOR


def is_arabic_letter(ch: str) -> bool:
    return "ء" <= ch <= "ي"


def is_digit_char(ch: str) -> bool:
    return (
        "0" <= ch <= "9"
        or "٠" <= ch <= "٩"
        or "۰" <= ch <= "۹"
    )


def is_word_start(ch: str) -> bool:
    return ch == "_" or is_arabic_letter(ch) or ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def is_word_char(ch: str) -> bool:
    return is_word_start(ch) or is_digit_char(ch)


def fold_word(word: str) -> str:
    """Normalize a single word the way `normalize` treats source outside strings."""
    return word.replace(TATWEEL, "").translate(_ALEF_FOLD)


def fold_alef(text: str) -> str:
    return text.translate(_ALEF_FOLD)
