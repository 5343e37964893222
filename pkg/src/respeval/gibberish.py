"""Stage-1 gibberish screening.

Combines bigram-model average log-likelihood with language-specific filters
(character-class runs and lexicon coverage for English; syllable completeness,
jamo diversity and an optional morpheme oracle for Korean) plus a whitelist
for conversational shorthand like "lol" or "ㅋㅋㅋ".
"""

from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Optional

from . import markov, textstat
from .records import SurveyItem

RULE_LOG_LIKELIHOOD = "log_likelihood"
RULE_CLASS_RUN = "class_run"
RULE_VALID_WORD_RATIO = "valid_word_ratio"
RULE_SYLLABLE_RATIO = "syllable_ratio"
RULE_JAMO_DIVERSITY = "jamo_diversity"
RULE_NO_MORPHEMES = "no_morphemes"

DEFAULT_LL_THRESHOLDS = {textstat.ENGLISH: -4.0, textstat.KOREAN: -3.5}


class LanguageModelMismatch(ValueError):
    """The model's unit does not match the item's language."""


@dataclass(frozen=True)
class GibberishVerdict:
    is_gibberish: bool
    avg_ll: float | None
    triggered_rules: tuple[str, ...]
    whitelisted: bool

    def to_dict(self) -> dict:
        return {
            "is_gibberish": self.is_gibberish,
            "avg_ll": self.avg_ll,
            "triggered_rules": list(self.triggered_rules),
            "whitelisted": self.whitelisted,
        }


@dataclass
class GibberishConfig:
    ll_threshold: float = -4.0
    run_threshold: int = 10
    valid_word_threshold: float = 0.4
    syllable_ratio_threshold: float = 0.6
    jamo_diversity_threshold: int = 4
    whitelist: frozenset[str] = frozenset()
    lexicon: frozenset[str] = frozenset()
    # Optional Korean morphological check: returns True when the text contains
    # at least one recognizable morpheme. Absent -> the rule is skipped.
    morpheme_oracle: Optional[Callable[[str], bool]] = None

    def __post_init__(self):
        if self.ll_threshold >= 0:
            raise ValueError("ll_threshold must be negative")
        for name in ("valid_word_threshold", "syllable_ratio_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    @classmethod
    def for_language(
        cls,
        language: str,
        whitelist_path: str | None = None,
        lexicon_path: str | None = None,
        **overrides,
    ) -> "GibberishConfig":
        """Defaults for a language, with the bundled whitelist and lexicon."""
        kwargs = {
            "ll_threshold": DEFAULT_LL_THRESHOLDS[language],
            "whitelist": load_whitelist(language, whitelist_path),
        }
        if language == textstat.ENGLISH:
            kwargs["lexicon"] = textstat.load_lexicon(lexicon_path)
        kwargs.update(overrides)
        return cls(**kwargs)


def load_whitelist(language: str, path: str | None = None) -> frozenset[str]:
    """Whitelist file: UTF-8, one entry per line, '#' comments."""
    if path is None:
        name = {textstat.ENGLISH: "whitelist_en.txt", textstat.KOREAN: "whitelist_ko.txt"}
        data = (
            resources.files("respeval.data")
            .joinpath(name[language])
            .read_text(encoding="utf-8")
        )
    else:
        with open(path, encoding="utf-8") as fh:
            data = fh.read()
    entries = set()
    for line in data.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line)
    return frozenset(entries)


def is_whitelisted(text: str, whitelist: frozenset[str]) -> bool:
    """Exact, whole-token-repeated, or last-letter-elongated whitelist match.

    "ha" admits "hahaha"; "so" admits "soooo". Latin entries match
    case-insensitively.
    """
    candidate = text.strip().casefold()
    if not candidate:
        return False
    for entry in whitelist:
        target = entry.casefold()
        if candidate == target:
            return True
        # whole-token repetition: entry repeated two or more times
        if (
            len(candidate) > len(target)
            and len(candidate) % len(target) == 0
            and candidate == target * (len(candidate) // len(target))
        ):
            return True
        # elongation: entry's final character repeated further
        if candidate.startswith(target) and set(candidate[len(target):]) == {target[-1]}:
            return True
    return False


def _english_rules(response: str, avg_ll: float | None, config: GibberishConfig) -> list[str]:
    normalized = textstat.normalize_english(response)
    triggered = []
    if avg_ll is None or avg_ll < config.ll_threshold:
        triggered.append(RULE_LOG_LIKELIHOOD)
    if textstat.longest_class_run(normalized) > config.run_threshold:
        triggered.append(RULE_CLASS_RUN)
    if textstat.valid_word_ratio(normalized, config.lexicon) < config.valid_word_threshold:
        triggered.append(RULE_VALID_WORD_RATIO)
    return triggered


def _korean_rules(response: str, avg_ll: float | None, config: GibberishConfig) -> list[str]:
    triggered = []
    if avg_ll is None or avg_ll < config.ll_threshold:
        triggered.append(RULE_LOG_LIKELIHOOD)
    if textstat.hangul_syllable_ratio(response) < config.syllable_ratio_threshold:
        triggered.append(RULE_SYLLABLE_RATIO)
    if textstat.jamo_diversity(response) < config.jamo_diversity_threshold:
        triggered.append(RULE_JAMO_DIVERSITY)
    if config.morpheme_oracle is not None and not config.morpheme_oracle(response):
        triggered.append(RULE_NO_MORPHEMES)
    return triggered


def detect(
    item: SurveyItem, model: markov.BigramModel, config: GibberishConfig
) -> GibberishVerdict:
    """Classify one response as gibberish or not.

    Order: whitelist short-circuit; average log-likelihood; language rules;
    then the English slang escape hatch (a valid-word-ratio failure alone is
    forgiven when the likelihood clears its threshold).
    """
    expected_unit = markov.UNIT_CHAR if item.language == textstat.ENGLISH else markov.UNIT_JAMO
    if model.unit != expected_unit:
        raise LanguageModelMismatch(
            f"model unit {model.unit!r} does not match language {item.language!r}"
        )

    if is_whitelisted(item.response, config.whitelist):
        return GibberishVerdict(
            is_gibberish=False, avg_ll=None, triggered_rules=(), whitelisted=True
        )

    avg_ll = markov.avg_log_likelihood(model, item.response)
    if item.language == textstat.ENGLISH:
        triggered = _english_rules(item.response, avg_ll, config)
        if (
            triggered == [RULE_VALID_WORD_RATIO]
            and avg_ll is not None
            and avg_ll >= config.ll_threshold
        ):
            triggered = []
    else:
        triggered = _korean_rules(item.response, avg_ll, config)

    return GibberishVerdict(
        is_gibberish=bool(triggered),
        avg_ll=avg_ll,
        triggered_rules=tuple(triggered),
        whitelisted=False,
    )
