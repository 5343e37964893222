"""Seeded generators for the committed desk-scale detection corpora.

Each language gets a 50/50 labeled set: gibberish from three generators
(keyboard mash, repeated characters, random symbols) and clean sentences
drawn from the bundled training corpora. Everything is deterministic for a
given seed so the committed files can be regenerated bit-for-bit.
"""

from importlib import resources

import numpy as np

from . import gibberish, textstat

QWERTY_ROWS = ["qwertyuiop", "asdfghjkl", "zxcvbnm"]
SYMBOLS = "!@#$%^&*()_+-=[]{};:<>?/\\|~0123456789"


def _qwerty_neighbors() -> dict[str, str]:
    """Physically adjacent keys (same row and the staggered rows above/below)."""
    neighbors = {ch: set() for row in QWERTY_ROWS for ch in row}
    for r, row in enumerate(QWERTY_ROWS):
        for i, ch in enumerate(row):
            if i > 0:
                neighbors[ch].add(row[i - 1])
            if i + 1 < len(row):
                neighbors[ch].add(row[i + 1])
            for other in (r - 1, r + 1):
                if 0 <= other < len(QWERTY_ROWS):
                    for j in (i - 1, i):
                        if 0 <= j < len(QWERTY_ROWS[other]):
                            neighbors[ch].add(QWERTY_ROWS[other][j])
    return {ch: "".join(sorted(adj)) for ch, adj in neighbors.items()}


QWERTY_NEIGHBORS = _qwerty_neighbors()


def load_corpus(language: str) -> list[str]:
    name = {textstat.ENGLISH: "corpus_en.txt", textstat.KOREAN: "corpus_ko.txt"}
    data = (
        resources.files("respeval.data").joinpath(name[language]).read_text(encoding="utf-8")
    )
    return [line for line in data.splitlines() if line.strip()]


def keyboard_mash(rng: np.random.Generator, language: str) -> str:
    """Adjacent-key walks; Korean mash lands on isolated compatibility jamo."""
    if language == textstat.ENGLISH:
        keys = sorted(QWERTY_NEIGHBORS)
        words = []
        for _ in range(int(rng.integers(1, 4))):
            key = keys[int(rng.integers(0, len(keys)))]
            length = int(rng.integers(4, 10))
            chars = []
            for _ in range(length):
                chars.append(key)
                adjacent = QWERTY_NEIGHBORS[key]
                key = adjacent[int(rng.integers(0, len(adjacent)))]
            words.append("".join(chars))
        return " ".join(words)
    jamo_pool = textstat.CHOSEONG + textstat.JUNGSEONG
    length = int(rng.integers(3, 10))
    return "".join(jamo_pool[int(i)] for i in rng.integers(0, len(jamo_pool), size=length))


def repeated_characters(rng: np.random.Generator, language: str) -> str:
    if language == textstat.ENGLISH:
        ch = "bcdfgjklmpqstvxz"[int(rng.integers(0, 16))]
        # long enough that the class-run rule fires regardless of how common
        # the doubled letter is in the training corpus
        return ch * int(rng.integers(11, 24))
    # a random syllable block repeated; low jamo diversity by construction
    cho = textstat.CHOSEONG[int(rng.integers(0, 19))]
    jung = textstat.JUNGSEONG[int(rng.integers(0, 21))]
    syllable = textstat.compose_jamo([cho, jung])
    return syllable * int(rng.integers(3, 10))


def random_symbols(rng: np.random.Generator, language: str) -> str:
    length = int(rng.integers(4, 15))
    return "".join(SYMBOLS[int(i)] for i in rng.integers(0, len(SYMBOLS), size=length))


GENERATORS = (keyboard_mash, repeated_characters, random_symbols)


def build_desk_corpus(language: str, per_class: int = 50, seed: int = 20240901) -> list[dict]:
    """50/50 labeled records: {"id", "text", "label"} with label 1 = gibberish."""
    rng = np.random.default_rng(seed)
    sentences = load_corpus(language)
    picks = rng.choice(len(sentences), size=per_class, replace=False)
    records = []
    for i, idx in enumerate(picks):
        records.append(
            {"id": f"{language[:2]}-clean-{i:03d}", "text": sentences[int(idx)], "label": 0}
        )
    whitelist = gibberish.load_whitelist(language)
    for i in range(per_class):
        generator = GENERATORS[i % len(GENERATORS)]
        # regenerate on a whitelist hit (e.g. a repeated syllable that spells
        # a whitelisted interjection); those are non-gibberish by definition
        while True:
            text = generator(rng, language)
            if not gibberish.is_whitelisted(text, whitelist):
                break
        records.append({"id": f"{language[:2]}-gib-{i:03d}", "text": text, "label": 1})
    return records
