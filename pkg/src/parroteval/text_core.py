"""Text normalization, tokenization and Porter stemming.

Every metric and transform in the package consumes ``TokenSeq`` values
produced here, so the rules below are fixed project-wide.
"""

from __future__ import annotations

import re
import unicodedata
from functools import lru_cache

Token = str
TokenSeq = tuple[str, ...]

# punctuation detached as standalone tokens; the apostrophe is handled apart
_PUNCT = '.,!?;:"()[]'
_PUNCT_SPLIT = re.compile("([" + re.escape(_PUNCT) + "])")
_APOSTROPHE_SPLIT = re.compile("(')")


def normalize(raw: str) -> str:
    """Lowercase, NFC-normalize and collapse whitespace runs."""
    text = unicodedata.normalize("NFC", raw).lower()
    return " ".join(text.split())


def _split_apostrophes(piece: str) -> list[str]:
    if piece.endswith("n't") and len(piece) > 3 and "'" not in piece[:-3]:
        return [piece[:-3], "n't"]
    if piece == "n't" or "'" not in piece:
        return [piece]
    parts = _APOSTROPHE_SPLIT.split(piece)
    out = []
    i = 0
    while i < len(parts):
        part = parts[i]
        if part != "'":
            if part:
                out.append(part)
            i += 1
            continue
        following = parts[i + 1]
        # a clitic only when the apostrophe starts the final alphanumeric run
        if following and following.isalnum() and i + 2 == len(parts):
            out.append("'" + following)
            i += 2
        else:
            out.append("'")
            i += 1
    return out


def tokenize(text: str) -> TokenSeq:
    """Split normalized text into tokens.

    Punctuation is detached; contractions split before the apostrophe,
    so ``"i'm"`` becomes ``("i", "'m")`` and ``"don't"`` becomes
    ``("do", "n't")``. Text that is already split this way is preserved.
    """
    tokens: list[str] = []
    for chunk in text.split():
        for piece in _PUNCT_SPLIT.split(chunk):
            if piece:
                tokens.extend(_split_apostrophes(piece))
    return tuple(tokens)


def detokenize(tokens: TokenSeq) -> str:
    return " ".join(tokens)


def prepare(raw: str) -> TokenSeq:
    """``tokenize(normalize(raw))``."""
    return tokenize(normalize(raw))


# --- Porter stemmer (1980 rules, no later extensions) -----------------------

_VOWELS = frozenset("aeiou")
_ALPHA = re.compile(r"[a-z]+")


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences in ``[C](VC)^m[V]``."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_consonant(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
    )


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (
        _is_consonant(word, len(word) - 3)
        and not _is_consonant(word, len(word) - 2)
        and _is_consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _apply_longest(word: str, rules, condition) -> str:
    # longest matching suffix wins; if its condition fails nothing else is tried
    for suffix, replacement in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if condition(stem, suffix):
                return stem + replacement
            return word
    return word


def _sorted_rules(pairs):
    return sorted(pairs, key=lambda p: -len(p[0]))


_STEP2 = _sorted_rules([
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
])
_STEP3 = _sorted_rules([
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
])
_STEP4 = _sorted_rules([
    (s, "") for s in (
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
        "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    )
])


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies"):
        return word[:-2]
    if word.endswith("ss"):
        return word
    if word.endswith("s"):
        return word[:-1]
    return word


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            return word[:-1]
        return word
    for suffix in ("ed", "ing"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if not _has_vowel(stem):
                return word
            if stem.endswith(("at", "bl", "iz")):
                return stem + "e"
            if _ends_double_consonant(stem) and stem[-1] not in "lsz":
                return stem[:-1]
            if _measure(stem) == 1 and _ends_cvc(stem):
                return stem + "e"
            return stem
    return word


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


def _step4_condition(stem: str, suffix: str) -> bool:
    if _measure(stem) <= 1:
        return False
    if suffix == "ion":
        return stem.endswith(("s", "t"))
    return True


def _step5(word: str) -> str:
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            word = stem
    if word.endswith("ll") and _measure(word) > 1:
        word = word[:-1]
    return word


@lru_cache(maxsize=65536)
def stem(token: Token) -> Token:
    """Porter-stem a lowercase token; non-alphabetic tokens pass through."""
    if not _ALPHA.fullmatch(token):
        return token
    word = _step1a(token)
    word = _step1b(word)
    word = _step1c(word)
    word = _apply_longest(word, _STEP2, lambda s, _: _measure(s) > 0)
    word = _apply_longest(word, _STEP3, lambda s, _: _measure(s) > 0)
    word = _apply_longest(word, _STEP4, _step4_condition)
    return _step5(word)
