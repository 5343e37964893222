"""Score normalization, aggregation and accept/reject decisions.

Dimension scores are divided by their scale maxima (effort/7, relevance/4,
completeness/4) so every aggregate lives in [0, 1]. "Sum" aggregation is the
mean of the normalized scores; "regression" applies ridge weights fitted
against human overall-quality ratings.
"""

import json
from dataclasses import dataclass, field

import numpy as np

ACCEPT = "accept"
REJECT = "reject"
HOLD = "hold"

METHOD_SUM = "sum"
METHOD_REGRESSION = "regression"
METHOD_LLM = "llm"

EFFORT_MAX = 7
RELEVANCE_MAX = 4
COMPLETENESS_MAX = 4
OVERALL_MAX = 4

CONDITION_BOUND = 1e12


class DegenerateDesign(ValueError):
    """The regularized normal matrix is numerically singular."""


@dataclass(frozen=True)
class NormalizedScores:
    effort_n: float
    relevance_n: float
    completeness_n: float

    def as_array(self) -> np.ndarray:
        return np.array([self.effort_n, self.relevance_n, self.completeness_n])


@dataclass(frozen=True)
class RidgeWeights:
    w_effort: float
    w_relevance: float
    w_completeness: float
    intercept: float
    lam: float
    fitted_on: str = ""

    def as_array(self) -> np.ndarray:
        return np.array([self.w_effort, self.w_relevance, self.w_completeness])


@dataclass(frozen=True)
class QualityReport:
    overall: float
    method: str
    acceptance: str
    threshold: float
    components: NormalizedScores | None
    gibberish_short_circuit: bool = False

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "method": self.method,
            "acceptance": self.acceptance,
            "threshold": self.threshold,
            "components": None
            if self.components is None
            else {
                "effort_n": self.components.effort_n,
                "relevance_n": self.components.relevance_n,
                "completeness_n": self.components.completeness_n,
            },
            "gibberish_short_circuit": self.gibberish_short_circuit,
        }


def normalize(effort: int, relevance: int, completeness: int) -> NormalizedScores:
    """Divide each raw score by its scale maximum."""
    return NormalizedScores(
        effort_n=effort / EFFORT_MAX,
        relevance_n=relevance / RELEVANCE_MAX,
        completeness_n=completeness / COMPLETENESS_MAX,
    )


def aggregate_sum(n: NormalizedScores) -> float:
    """Mean of the normalized scores, keeping the aggregate in [0, 1]."""
    return (n.effort_n + n.relevance_n + n.completeness_n) / 3.0


def fit_ridge(features, targets, lam: float = 1.0, fitted_on: str = "") -> RidgeWeights:
    """Closed-form ridge fit with an unpenalized intercept.

    Minimizes ||Xw + b - y||^2 + lam * ||w||^2 via the normal equations on
    the centered system. Targets are expected on the [0, 1] scale.
    """
    X = np.asarray(features, dtype=float)
    y = np.asarray(targets, dtype=float)
    if X.ndim != 2:
        raise ValueError("features must be a 2-D matrix")
    if X.shape[0] != y.shape[0]:
        raise ValueError("features and targets disagree in length")
    if X.shape[0] < 4:
        raise ValueError("ridge fitting requires at least 4 rows")
    if lam < 0:
        raise ValueError("lambda must be non-negative")

    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    Xc = X - x_mean
    yc = y - y_mean
    A = Xc.T @ Xc + lam * np.eye(X.shape[1])
    if np.linalg.cond(A) > CONDITION_BOUND:
        raise DegenerateDesign("regularized normal matrix is numerically singular")
    w = np.linalg.solve(A, Xc.T @ yc)
    b = y_mean - x_mean @ w
    # designs narrower than the three dimensions pad with zero weights
    padded = np.zeros(3)
    padded[: min(3, w.size)] = w[:3]
    return RidgeWeights(
        w_effort=float(padded[0]),
        w_relevance=float(padded[1]),
        w_completeness=float(padded[2]),
        intercept=float(b),
        lam=float(lam),
        fitted_on=fitted_on,
    )


def aggregate_regression(weights: RidgeWeights, n: NormalizedScores) -> float:
    """Weighted sum plus intercept, clamped to [0, 1] for thresholding."""
    value = float(weights.as_array() @ n.as_array() + weights.intercept)
    return min(1.0, max(0.0, value))


def decide_acceptance(overall: float, threshold: float) -> str:
    """Accept iff overall >= threshold (boundary inclusive)."""
    return ACCEPT if overall >= threshold else REJECT


def label_to_binary(label: str) -> int:
    """Ground-truth mapping for evaluation: accept positive, hold/reject negative."""
    if label == ACCEPT:
        return 1
    if label in (HOLD, REJECT):
        return 0
    raise ValueError(f"unknown acceptance label: {label!r}")


def rescale_overall(rating: float) -> float:
    """Human overall-quality ratings (0-4) rescaled to [0, 1]."""
    return rating / OVERALL_MAX


def save_weights(weights: RidgeWeights, path: str) -> None:
    doc = {
        "w_effort": weights.w_effort,
        "w_relevance": weights.w_relevance,
        "w_completeness": weights.w_completeness,
        "intercept": weights.intercept,
        "lambda": weights.lam,
        "fitted_on": weights.fitted_on,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)


def load_weights(path: str) -> RidgeWeights:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return RidgeWeights(
        w_effort=float(doc["w_effort"]),
        w_relevance=float(doc["w_relevance"]),
        w_completeness=float(doc["w_completeness"]),
        intercept=float(doc["intercept"]),
        lam=float(doc["lambda"]),
        fitted_on=doc.get("fitted_on", ""),
    )
