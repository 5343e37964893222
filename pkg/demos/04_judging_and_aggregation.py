"""Rubric judging with a scripted offline client, then score aggregation.

Replays a hotel-stay example: dimension scores 2/7, 3/4, 2/4 aggregate
to an overall quality of about 0.512, below an acceptance bar of 0.6.
A real deployment swaps the scripted client for HttpChatClient.
"""

import json

import numpy as np

from respeval import aggregate, judge
from respeval.cache import ScriptedChatClient
from respeval.records import SurveyItem

SCORES = {"effort": 2, "relevance": 3, "completeness": 2}

MARKERS = {
    "Rate how much thought and detail": "effort",
    "aligns with the topic and intent": "relevance",
    "Rate how completely the response fulfills": "completeness",
}


def script(system_text: str, user_text: str) -> str:
    for marker, dimension in MARKERS.items():
        if marker in user_text:
            return json.dumps(
                {dimension: SCORES[dimension], "reason": f"demo {dimension} verdict"}
            )
    raise AssertionError("unexpected prompt")


def main():
    item = SurveyItem(
        id="en-001",
        question="Which was the most important reason for staying at the hotel and why?",
        response="i like the ambience and security",
        language="english",
    )
    client = ScriptedChatClient(script)
    scores = judge.score_all(client, item, judge.JudgeConfig())
    print("dimension scores:", scores.values(), f"({client.calls} judge calls)")

    normalized = aggregate.normalize(*scores.values())
    overall = aggregate.aggregate_sum(normalized)
    decision = aggregate.decide_acceptance(overall, threshold=0.6)
    print(f"sum aggregation: {overall:.4f} -> {decision} at threshold 0.6")

    # Ridge aggregation: fit weights on a small synthetic annotation set
    rng = np.random.default_rng(0)
    X = rng.uniform(0, 1, size=(30, 3))
    y = X @ np.array([0.5, 0.3, 0.2]) + rng.normal(0, 0.02, size=30)
    weights = aggregate.fit_ridge(X, y, lam=1.0)
    print(
        "fitted weights:",
        [round(float(w), 3) for w in weights.as_array()],
        "intercept", round(weights.intercept, 3),
    )
    print("regression aggregation:", round(aggregate.aggregate_regression(weights, normalized), 4))


if __name__ == "__main__":
    main()
