"""Stage-2 rubric evaluation through a chat-completion endpoint.

Renders the fixed rubric prompts for effort (0-7), relevance (0-4),
completeness (0-4) and overall quality (0-4), parses the JSON verdicts the
model returns, and retries on malformed output. The transport is a pluggable
ChatClient so tests run against deterministic scripted mocks.
"""

import json
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Protocol

import requests

from .records import SurveyItem
from .textstat import ENGLISH

EFFORT = "effort"
RELEVANCE = "relevance"
COMPLETENESS = "completeness"
OVERALL_QUALITY = "overall_quality"

API_KEY_ENV = "RESPEVAL_LLM_API_KEY"

_PROMPT_DIRS = {ENGLISH: "en", "korean": "ko"}
_FENCE_RE = re.compile(r"```(?:json)?\s*(.*?)```", re.DOTALL)


@dataclass(frozen=True)
class Dimension:
    kind: str
    min_score: int
    max_score: int


DIMENSIONS = {
    EFFORT: Dimension(EFFORT, 0, 7),
    RELEVANCE: Dimension(RELEVANCE, 0, 4),
    COMPLETENESS: Dimension(COMPLETENESS, 0, 4),
    OVERALL_QUALITY: Dimension(OVERALL_QUALITY, 0, 4),
}


@dataclass(frozen=True)
class DimensionScore:
    dimension: str
    score: int
    reason: str
    raw_response: str = ""

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "score": self.score, "reason": self.reason}


@dataclass
class DimensionScores:
    """Results of the three independent dimension judgments.

    A failed dimension stays None with the failure message recorded.
    """

    effort: DimensionScore | None = None
    relevance: DimensionScore | None = None
    completeness: DimensionScore | None = None
    failures: dict[str, str] = field(default_factory=dict)

    def complete(self) -> bool:
        return None not in (self.effort, self.relevance, self.completeness)

    def values(self) -> tuple[int, int, int]:
        if not self.complete():
            raise ValueError("dimension scores are incomplete")
        return (self.effort.score, self.relevance.score, self.completeness.score)


@dataclass
class JudgeConfig:
    endpoint_url: str = ""
    model_identifier: str = "gpt-4o-mini"
    temperature: float = 0.0
    max_tokens: int = 300
    max_retries: int = 3
    language: str = ENGLISH
    timeout: float = 60.0

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")


class ChatClient(Protocol):
    def complete(self, system_text: str, user_text: str, config: JudgeConfig) -> str:
        ...


class MalformedJudgment(ValueError):
    """No parsable JSON verdict in the model output."""


class ScoreOutOfRange(ValueError):
    def __init__(self, dimension: str, value):
        self.value = value
        super().__init__(f"{dimension} score out of range: {value!r}")


class MissingScoresContext(ValueError):
    """overall_quality prompts require the three dimension scores."""


class JudgeUnavailable(RuntimeError):
    def __init__(self, dimension: str, attempts: list[str]):
        self.attempts = attempts
        super().__init__(
            f"judging {dimension} failed after {len(attempts)} attempts: {attempts[-1]}"
        )


def _template(name: str, language: str) -> str:
    return (
        resources.files("respeval.data")
        .joinpath("prompts")
        .joinpath(_PROMPT_DIRS[language])
        .joinpath(name + ".txt")
        .read_text(encoding="utf-8")
    )


def format_conversation(item: SurveyItem) -> str:
    return f'Question: "{item.question}"\nResponse: "{item.response}"'


def build_prompt(
    dimension: str,
    item: SurveyItem,
    scores_context: DimensionScores | None = None,
    language: str = ENGLISH,
) -> tuple[str, str]:
    """Render (system_text, user_text) for one dimension.

    The rubric bodies are fixed template files; only the conversation slot
    (and, for overall quality, the six score/reason slots) vary.
    """
    if dimension == OVERALL_QUALITY:
        if scores_context is None or not scores_context.complete():
            raise MissingScoresContext(
                "overall_quality requires effort, relevance and completeness scores"
            )
    system_text = _template("system", language)
    user_text = _template(dimension, language)
    if dimension == OVERALL_QUALITY:
        slots = {
            "{effort_score}": str(scores_context.effort.score),
            "{effort_reason}": scores_context.effort.reason,
            "{relevance_score}": str(scores_context.relevance.score),
            "{relevance_reason}": scores_context.relevance.reason,
            "{completeness_score}": str(scores_context.completeness.score),
            "{completeness_reason}": scores_context.completeness.reason,
        }
        for slot, value in slots.items():
            user_text = user_text.replace(slot, value)
    user_text = user_text.replace("{conversation}", format_conversation(item))
    return system_text, user_text


def _candidate_json_objects(raw: str):
    yield raw.strip()
    for fenced in _FENCE_RE.findall(raw):
        yield fenced.strip()
    start = raw.find("{")
    end = raw.rfind("}")
    if start != -1 and end > start:
        yield raw[start : end + 1]


def parse_judgment(raw: str, dimension: str) -> DimensionScore:
    """Extract the score/reason JSON object from a model reply.

    Tolerates surrounding prose and code fences. Scores must be integers on
    the dimension's scale; anything else raises.
    """
    spec = DIMENSIONS[dimension]
    obj = None
    for candidate in _candidate_json_objects(raw):
        try:
            parsed = json.loads(candidate)
        except (json.JSONDecodeError, ValueError):
            continue
        if isinstance(parsed, dict):
            obj = parsed
            break
    if obj is None:
        raise MalformedJudgment(f"no JSON object found in reply: {raw[:200]!r}")
    if dimension not in obj or "reason" not in obj:
        raise MalformedJudgment(f"missing fields in reply: {sorted(obj)}")
    score = obj[dimension]
    # bool is an int subclass; the scales are plain integers
    if isinstance(score, bool) or not isinstance(score, int):
        raise MalformedJudgment(f"score is not an integer: {score!r}")
    if not spec.min_score <= score <= spec.max_score:
        raise ScoreOutOfRange(dimension, score)
    reason = str(obj["reason"]).strip()
    if not reason:
        raise MalformedJudgment("empty reason")
    return DimensionScore(dimension=dimension, score=score, reason=reason, raw_response=raw)


def _ask(
    client: ChatClient,
    system_text: str,
    user_text: str,
    dimension: str,
    config: JudgeConfig,
) -> DimensionScore:
    """Call the client with identical prompts up to max_retries times."""
    attempts: list[str] = []
    for _ in range(config.max_retries):
        try:
            raw = client.complete(system_text, user_text, config)
            return parse_judgment(raw, dimension)
        except (MalformedJudgment, ScoreOutOfRange, requests.RequestException, OSError) as exc:
            attempts.append(f"{type(exc).__name__}: {exc}")
    raise JudgeUnavailable(dimension, attempts)


def score_dimension(
    client: ChatClient, item: SurveyItem, dimension: str, config: JudgeConfig
) -> DimensionScore:
    if dimension == OVERALL_QUALITY:
        raise ValueError("use llm_overall_quality for the overall dimension")
    system_text, user_text = build_prompt(dimension, item, language=config.language)
    return _ask(client, system_text, user_text, dimension, config)


def score_all(
    client: ChatClient, item: SurveyItem, config: JudgeConfig, max_parallel: int = 3
) -> DimensionScores:
    """Judge effort, relevance and completeness concurrently.

    Per-dimension failures are collected rather than raised, so partial
    results survive.
    """
    result = DimensionScores()
    with ThreadPoolExecutor(max_workers=max(1, max_parallel)) as pool:
        futures = {
            dim: pool.submit(score_dimension, client, item, dim, config)
            for dim in (EFFORT, RELEVANCE, COMPLETENESS)
        }
    for dim, future in futures.items():
        try:
            setattr(result, dim, future.result())
        except JudgeUnavailable as exc:
            result.failures[dim] = str(exc)
    return result


def llm_overall_quality(
    client: ChatClient, item: SurveyItem, scores: DimensionScores, config: JudgeConfig
) -> DimensionScore:
    system_text, user_text = build_prompt(
        OVERALL_QUALITY, item, scores_context=scores, language=config.language
    )
    return _ask(client, system_text, user_text, OVERALL_QUALITY, config)


def llm_detect_gibberish(client: ChatClient, text: str, config: JudgeConfig) -> bool:
    """Baseline true/false meaningfulness probe.

    The model answers whether the sentence is meaningful, so gibberish means
    the answer was "false".
    """
    system_text = _template("system", config.language)
    user_text = _template("gibberish", config.language).replace("{sentence}", text)
    raw = client.complete(system_text, user_text, config)
    token = raw.strip().strip(".!\"'`").casefold()
    if token == "true":
        return False
    if token == "false":
        return True
    raise MalformedJudgment(f"expected true/false, got: {raw[:80]!r}")


class HttpChatClient:
    """Minimal chat-completions HTTP client (system+user message pair).

    Reads the bearer token from the RESPEVAL_LLM_API_KEY environment
    variable. Safe for concurrent use; requests.Session is created per call
    thread via the default pool.
    """

    def __init__(self, api_key: str | None = None):
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV, "")

    def complete(self, system_text: str, user_text: str, config: JudgeConfig) -> str:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "model": config.model_identifier,
            "temperature": config.temperature,
            "max_tokens": config.max_tokens,
            "messages": [
                {"role": "system", "content": system_text},
                {"role": "user", "content": user_text},
            ],
        }
        response = requests.post(
            config.endpoint_url, json=payload, headers=headers, timeout=config.timeout
        )
        response.raise_for_status()
        body = response.json()
        return body["choices"][0]["message"]["content"]
