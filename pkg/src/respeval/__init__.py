"""Two-stage quality scoring for human-written open-ended survey responses."""

from .records import SurveyItem, EvaluationRecord
from .textstat import ENGLISH, KOREAN, normalize_english, decompose_jamo, compose_jamo
from .markov import BigramModel, train, avg_log_likelihood
from .gibberish import GibberishConfig, GibberishVerdict, detect, is_whitelisted
from .judge import (
    DimensionScore,
    DimensionScores,
    JudgeConfig,
    build_prompt,
    parse_judgment,
    score_all,
)
from .aggregate import (
    NormalizedScores,
    RidgeWeights,
    QualityReport,
    normalize,
    aggregate_sum,
    aggregate_regression,
    fit_ridge,
    decide_acceptance,
)
from .metrics import (
    spearman_rho,
    kendall_tau,
    quadratic_weighted_kappa,
    bootstrap_ci_diff,
    roc_auc,
)

__version__ = "0.1.0"

__all__ = [
    "SurveyItem",
    "EvaluationRecord",
    "ENGLISH",
    "KOREAN",
    "normalize_english",
    "decompose_jamo",
    "compose_jamo",
    "BigramModel",
    "train",
    "avg_log_likelihood",
    "GibberishConfig",
    "GibberishVerdict",
    "detect",
    "is_whitelisted",
    "DimensionScore",
    "DimensionScores",
    "JudgeConfig",
    "build_prompt",
    "parse_judgment",
    "score_all",
    "NormalizedScores",
    "RidgeWeights",
    "QualityReport",
    "normalize",
    "aggregate_sum",
    "aggregate_regression",
    "fit_ridge",
    "decide_acceptance",
    "spearman_rho",
    "kendall_tau",
    "quadratic_weighted_kappa",
    "bootstrap_ci_diff",
    "roc_auc",
]
