"""Record types flowing through the batch pipeline."""

from dataclasses import dataclass, field

from .textstat import ENGLISH, KOREAN

LANGUAGES = (ENGLISH, KOREAN)


@dataclass(frozen=True)
class SurveyItem:
    """One question/response pair with its language tag."""

    id: str
    question: str
    response: str
    language: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("item id must be nonempty")
        if self.language not in LANGUAGES:
            raise ValueError(f"unknown language: {self.language!r}")


@dataclass
class EvaluationRecord:
    """Per-item pipeline output: stage-1 verdict plus optional stage-2 results."""

    item_id: str
    gibberish: dict
    scores: dict | None = None
    overall: dict | None = None
    error: str | None = None
    metadata: dict = field(default_factory=dict)
