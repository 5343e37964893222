"""Bigram Markov models over characters (English) or jamo (Korean).

A trained model scores candidate text by the average natural-log transition
probability under add-alpha smoothing; low averages flag statistically
implausible sequences.
"""

import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from . import textstat

UNIT_CHAR = "char"
UNIT_JAMO = "jamo"
UNKNOWN = "<unk>"

FORMAT_VERSION = 1


class EmptyCorpus(ValueError):
    """No line in the corpus yielded a single adjacent-unit pair."""


class FormatVersionMismatch(ValueError):
    """Model file was written with an unsupported format version."""


class CorruptCounts(ValueError):
    """Stored context totals disagree with the transition counts."""


@dataclass(frozen=True)
class BigramModel:
    unit: str
    vocabulary: tuple[str, ...]
    transition_counts: dict[tuple[str, str], int]
    context_totals: dict[str, int]
    smoothing_alpha: float = 1.0
    metadata: dict = field(default_factory=dict)

    def log_prob(self, a: str, b: str) -> float:
        """Smoothed ln P(b | a); symbols outside the vocabulary map to UNKNOWN."""
        vocab = set(self.vocabulary)
        if a not in vocab:
            a = UNKNOWN
        if b not in vocab:
            b = UNKNOWN
        alpha = self.smoothing_alpha
        count = self.transition_counts.get((a, b), 0)
        total = self.context_totals.get(a, 0)
        return math.log((count + alpha) / (total + alpha * len(self.vocabulary)))


def _segments(line: str, unit: str) -> list[Sequence[str]]:
    """Symbol runs of one line; pairs are only counted within a run."""
    if unit == UNIT_CHAR:
        normalized = textstat.normalize_english(line).normalized
        return [normalized] if normalized else []
    if unit == UNIT_JAMO:
        runs: list[list[str]] = []
        current: list[str] = []
        for u in textstat.decompose_jamo(line).units:
            if u.is_jamo:
                current.append(u.char)
            elif current:
                runs.append(current)
                current = []
        if current:
            runs.append(current)
        return runs
    raise ValueError(f"unknown unit: {unit!r}")


def train(
    corpus: Iterable[str],
    unit: str,
    smoothing_alpha: float = 1.0,
    metadata: dict | None = None,
) -> BigramModel:
    """Count adjacent unit pairs line by line; pairs never span lines.

    Raises EmptyCorpus when no line yields at least one pair.
    """
    if smoothing_alpha <= 0:
        raise ValueError("smoothing_alpha must be positive")
    counts: dict[tuple[str, str], int] = {}
    totals: dict[str, int] = {}
    seen: set[str] = set()
    lines = 0
    for line in corpus:
        lines += 1
        for segment in _segments(line, unit):
            seen.update(segment)
            for a, b in zip(segment, segment[1:]):
                counts[(a, b)] = counts.get((a, b), 0) + 1
                totals[a] = totals.get(a, 0) + 1
    if not counts:
        raise EmptyCorpus("corpus contains no adjacent unit pairs")
    vocabulary = tuple(sorted(seen)) + (UNKNOWN,)
    meta = dict(metadata or {})
    meta.setdefault("lines", lines)
    return BigramModel(
        unit=unit,
        vocabulary=vocabulary,
        transition_counts=counts,
        context_totals=totals,
        smoothing_alpha=smoothing_alpha,
        metadata=meta,
    )


def preprocess(model: BigramModel, text: str) -> list[Sequence[str]]:
    """Turn raw text into the model's symbol runs."""
    return _segments(text, model.unit)


def avg_log_likelihood(model: BigramModel, text: str) -> float | None:
    """Average ln transition probability over the text's unit pairs.

    Returns None (undefined) when the preprocessed text has no transitions;
    callers treat that as gibberish.
    """
    total = 0.0
    transitions = 0
    for segment in preprocess(model, text):
        for a, b in zip(segment, segment[1:]):
            total += model.log_prob(a, b)
            transitions += 1
    if transitions == 0:
        return None
    return total / transitions


def save(model: BigramModel, path: str) -> None:
    """Write the model as a versioned JSON document with sparse count triples."""
    doc = {
        "version": FORMAT_VERSION,
        "unit": model.unit,
        "alpha": model.smoothing_alpha,
        "vocabulary": list(model.vocabulary),
        "counts": [[a, b, c] for (a, b), c in sorted(model.transition_counts.items())],
        "context_totals": dict(sorted(model.context_totals.items())),
        "metadata": model.metadata,
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False)
    os.replace(tmp, path)


def _from_document(doc: dict) -> BigramModel:
    if doc.get("version") != FORMAT_VERSION:
        raise FormatVersionMismatch(
            f"unsupported model format version: {doc.get('version')!r}"
        )
    counts = {(a, b): int(c) for a, b, c in doc["counts"]}
    totals: dict[str, int] = {}
    for (a, _), c in counts.items():
        totals[a] = totals.get(a, 0) + c
    if "context_totals" in doc:
        stored = {k: int(v) for k, v in doc["context_totals"].items()}
        if stored != totals:
            raise CorruptCounts("stored context totals disagree with counts")
    return BigramModel(
        unit=doc["unit"],
        vocabulary=tuple(doc["vocabulary"]),
        transition_counts=counts,
        context_totals=totals,
        smoothing_alpha=float(doc["alpha"]),
        metadata=doc.get("metadata", {}),
    )


def load(path: str) -> BigramModel:
    """Read a model written by save(); validates version and count totals."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return _from_document(doc)


def load_bundled(language: str) -> BigramModel:
    """Load the pretrained model shipped for a language."""
    name = {
        textstat.ENGLISH: "english_char.json",
        textstat.KOREAN: "korean_jamo.json",
    }[language]
    data = (
        resources.files("respeval.data")
        .joinpath("models")
        .joinpath(name)
        .read_text(encoding="utf-8")
    )
    return _from_document(json.loads(data))
