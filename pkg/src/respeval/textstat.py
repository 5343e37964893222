"""Language-specific text statistics used by the gibberish filters.

English text is reduced to a lowercase a-z + space alphabet; Korean text is
analysed at the jamo level after arithmetic decomposition of precomposed
Hangul syllable blocks (U+AC00..U+D7A3).
"""

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, NamedTuple

ENGLISH = "english"
KOREAN = "korean"

VOWELS = frozenset("aeiou")

HANGUL_BASE = 0xAC00
HANGUL_LAST = 0xD7A3
COMPAT_JAMO_FIRST = 0x3131  # ㄱ
COMPAT_JAMO_LAST = 0x3163   # ㅣ

# Compatibility-jamo spellings of the 19 initials, 21 medials and 27 finals.
CHOSEONG = "ㄱㄲㄴㄷㄸㄹㅁㅂㅃㅅㅆㅇㅈㅉㅊㅋㅌㅍㅎ"
JUNGSEONG = "ㅏㅐㅑㅒㅓㅔㅕㅖㅗㅘㅙㅚㅛㅜㅝㅞㅟㅠㅡㅢㅣ"
JONGSEONG = "ㄱㄲㄳㄴㄵㄶㄷㄹㄺㄻㄼㄽㄾㄿㅀㅁㅂㅄㅅㅆㅇㅈㅊㅋㅌㅍㅎ"

_CHO_INDEX = {c: i for i, c in enumerate(CHOSEONG)}
_JUNG_INDEX = {c: i for i, c in enumerate(JUNGSEONG)}
_JONG_INDEX = {c: i + 1 for i, c in enumerate(JONGSEONG)}

_WS_RE = re.compile(r"\s+")
_NON_LATIN_RE = re.compile(r"[^a-z ]+")


@dataclass(frozen=True)
class NormalizedText:
    original: str
    normalized: str
    language: str


class JamoUnit(NamedTuple):
    char: str
    is_jamo: bool


@dataclass(frozen=True)
class JamoSequence:
    units: tuple[JamoUnit, ...]
    source_syllable_count: int

    def jamo_chars(self) -> list[str]:
        """Jamo characters only, non-Hangul passthrough units dropped."""
        return [u.char for u in self.units if u.is_jamo]


def normalize_english(text: str) -> NormalizedText:
    """Lowercase and keep only a-z and single spaces.

    Digits, punctuation and any non-Latin characters are removed; runs of
    whitespace collapse to one space; the result is stripped. Idempotent.
    """
    lowered = text.lower()
    spaced = _WS_RE.sub(" ", lowered)
    kept = _NON_LATIN_RE.sub("", spaced)
    collapsed = _WS_RE.sub(" ", kept).strip()
    return NormalizedText(original=text, normalized=collapsed, language=ENGLISH)


def is_hangul_syllable(ch: str) -> bool:
    return HANGUL_BASE <= ord(ch) <= HANGUL_LAST


def is_compat_jamo(ch: str) -> bool:
    return COMPAT_JAMO_FIRST <= ord(ch) <= COMPAT_JAMO_LAST


def decompose_jamo(text: str) -> JamoSequence:
    """Expand every precomposed Hangul syllable into its jamo.

    index = codepoint - 0xAC00; initial = index // 588;
    medial = (index // 28) % 21; final = index % 28 (0 means absent).
    Standalone compatibility jamo are kept as-is; everything else passes
    through flagged non-jamo.
    """
    units: list[JamoUnit] = []
    syllables = 0
    for ch in text:
        if is_hangul_syllable(ch):
            syllables += 1
            index = ord(ch) - HANGUL_BASE
            units.append(JamoUnit(CHOSEONG[index // 588], True))
            units.append(JamoUnit(JUNGSEONG[(index // 28) % 21], True))
            final = index % 28
            if final:
                units.append(JamoUnit(JONGSEONG[final - 1], True))
        elif is_compat_jamo(ch):
            units.append(JamoUnit(ch, True))
        else:
            units.append(JamoUnit(ch, False))
    return JamoSequence(units=tuple(units), source_syllable_count=syllables)


def compose_jamo(chars: Iterable[str]) -> str:
    """Greedily recompose a jamo stream into syllable blocks.

    Inverse of decompose_jamo on complete-syllable-only input: an initial
    followed by a medial opens a block; a trailing consonant joins as the
    final unless it itself starts the next block (lookahead on the medial).
    """
    seq = list(chars)
    out: list[str] = []
    i = 0
    n = len(seq)
    while i < n:
        c = seq[i]
        if c in _CHO_INDEX and i + 1 < n and seq[i + 1] in _JUNG_INDEX:
            cho = _CHO_INDEX[c]
            jung = _JUNG_INDEX[seq[i + 1]]
            jong = 0
            consumed = 2
            if i + 2 < n and seq[i + 2] in _JONG_INDEX:
                starts_next = (
                    seq[i + 2] in _CHO_INDEX
                    and i + 3 < n
                    and seq[i + 3] in _JUNG_INDEX
                )
                if not starts_next:
                    jong = _JONG_INDEX[seq[i + 2]]
                    consumed = 3
            out.append(chr(HANGUL_BASE + (cho * 21 + jung) * 28 + jong))
            i += consumed
        else:
            out.append(c)
            i += 1
    return "".join(out)


def longest_class_run(text: NormalizedText) -> int:
    """Longest contiguous run of characters from one class (vowel/consonant).

    Operates on english-normalized text; spaces terminate runs.
    """
    best = 0
    run = 0
    run_is_vowel = None
    for ch in text.normalized:
        if ch == " ":
            run = 0
            run_is_vowel = None
            continue
        vowel = ch in VOWELS
        if vowel is run_is_vowel:
            run += 1
        else:
            run = 1
            run_is_vowel = vowel
        best = max(best, run)
    return best


def valid_word_ratio(text: NormalizedText, lexicon: frozenset[str]) -> float:
    """Fraction of whitespace tokens found in the lexicon; 0.0 on no tokens."""
    tokens = text.normalized.split()
    if not tokens:
        return 0.0
    return sum(1 for t in tokens if t in lexicon) / len(tokens)


def hangul_syllable_ratio(text: str) -> float:
    """Complete precomposed syllables over all Hangul characters.

    Hangul characters are precomposed syllables plus isolated compatibility
    jamo; non-Hangul input is ignored. No Hangul at all yields 1.0 so the
    Korean structural rules never fire on Latin-only text.
    """
    complete = 0
    hangul = 0
    for ch in text:
        if is_hangul_syllable(ch):
            complete += 1
            hangul += 1
        elif is_compat_jamo(ch):
            hangul += 1
    if hangul == 0:
        return 1.0
    return complete / hangul


def jamo_diversity(text: str) -> int:
    """Number of distinct jamo after decomposition, non-Hangul ignored."""
    return len(set(decompose_jamo(text).jamo_chars()))


def load_lexicon(path: str | None = None) -> frozenset[str]:
    """Load a lexicon file: one lowercase word per line, '#' comments.

    With no path, the bundled English word list is used.
    """
    if path is None:
        data = (
            resources.files("respeval.data")
            .joinpath("lexicon_en.txt")
            .read_text(encoding="utf-8")
        )
    else:
        with open(path, encoding="utf-8") as fh:
            data = fh.read()
    words = set()
    for line in data.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)
