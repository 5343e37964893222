"""Shared test helpers: scripted judge clients and canonical sample items."""

import json

import pytest

from respeval.records import SurveyItem

# Each rubric template opens with distinctive wording; the scripted clients
# use it to decide which dimension a prompt is asking about.
DIMENSION_MARKERS = {
    "Rate how much thought and detail": "effort",
    "aligns with the topic and intent": "relevance",
    "Rate how completely the response fulfills": "completeness",
    "Evaluate the overall quality": "overall_quality",
    "not gibberish": "gibberish",
}


def dimension_of(user_text: str) -> str:
    for marker, dimension in DIMENSION_MARKERS.items():
        if marker in user_text:
            return dimension
    raise AssertionError(f"unrecognized prompt: {user_text[:80]!r}")


def judgment_script(scores: dict):
    """Script returning a well-formed JSON verdict per dimension."""

    def script(system_text: str, user_text: str) -> str:
        dim = dimension_of(user_text)
        return json.dumps({dim: scores[dim], "reason": f"scripted {dim} judgment"})

    return script


@pytest.fixture
def hotel_item() -> SurveyItem:
    return SurveyItem(
        id="en-001",
        question="Which was the most important reason for staying at the hotel and why?",
        response="i like the ambience and security",
        language="english",
    )
