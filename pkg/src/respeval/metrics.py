"""Validation statistics: rank correlations, quadratic-weighted kappa,
paired bootstrap confidence intervals, and ROC/AUC.

Degenerate inputs (constant vectors) yield None rather than raising, so
batch reports can surface the condition per statistic.
"""

from dataclasses import dataclass

import numpy as np


class TooSmallSample(ValueError):
    pass


class NonConvergentResampling(RuntimeError):
    """More than half of the bootstrap draws were degenerate."""


class SingleClass(ValueError):
    """ROC needs both positive and negative labels."""


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    resamples: int
    seed: int
    observed_diff: float
    redraws: int = 0


@dataclass(frozen=True)
class RocResult:
    points: tuple[tuple[float, float], ...]
    auc: float


def _average_ranks(v: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties given the average of their positions."""
    order = np.argsort(v, kind="stable")
    ranks = np.empty(len(v), dtype=float)
    i = 0
    while i < len(v):
        j = i
        while j + 1 < len(v) and v[order[j + 1]] == v[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman_rho(x, y) -> float | None:
    """Pearson correlation of average-rank-transformed vectors.

    Returns None when either vector is constant.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValueError("paired samples must be equal-length vectors of length >= 2")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    sx = rx - rx.mean()
    sy = ry - ry.mean()
    denom = np.sqrt((sx @ sx) * (sy @ sy))
    if denom == 0:
        return None
    return float((sx @ sy) / denom)


def kendall_tau(x, y) -> float | None:
    """Tie-corrected Kendall tau-b over all index pairs.

    Returns None when either vector is constant.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValueError("paired samples must be equal-length vectors of length >= 2")
    n = len(x)
    concordant = discordant = ties_x = ties_y = 0
    for i in range(n - 1):
        dx = x[i + 1 :] - x[i]
        dy = y[i + 1 :] - y[i]
        sign = np.sign(dx) * np.sign(dy)
        concordant += int(np.sum(sign > 0))
        discordant += int(np.sum(sign < 0))
        ties_x += int(np.sum((dx == 0) & (dy != 0)))
        ties_y += int(np.sum((dx != 0) & (dy == 0)))
    n0 = n * (n - 1) // 2
    # pairs tied in both vectors count toward neither correction term
    n1 = concordant + discordant + ties_x
    n2 = concordant + discordant + ties_y
    if n1 == 0 or n2 == 0:
        return None
    return float((concordant - discordant) / np.sqrt(float(n1) * float(n2)))


def quadratic_weighted_kappa(a, b, categories: range) -> float:
    """Chance-corrected agreement with squared-distance penalties.

    kappa = 1 - sum(w * O) / sum(w * E), w_ij = (i - j)^2 / (K - 1)^2,
    O the normalized joint histogram, E the outer product of marginals.
    """
    a = np.asarray(a, dtype=int)
    b = np.asarray(b, dtype=int)
    if a.shape != b.shape or a.ndim != 1 or len(a) == 0:
        raise ValueError("rating vectors must be equal-length and nonempty")
    cats = list(categories)
    k = len(cats)
    if k < 2:
        raise ValueError("need at least two categories")
    index = {c: i for i, c in enumerate(cats)}
    for v in np.concatenate([a, b]):
        if int(v) not in index:
            raise ValueError(f"rating {v} outside declared categories")
    observed = np.zeros((k, k))
    for va, vb in zip(a, b):
        observed[index[int(va)], index[int(vb)]] += 1
    observed /= len(a)
    marg_a = observed.sum(axis=1)
    marg_b = observed.sum(axis=0)
    expected = np.outer(marg_a, marg_b)
    ii, jj = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    weights = (ii - jj) ** 2 / (k - 1) ** 2
    denom = float((weights * expected).sum())
    if denom == 0:
        return 1.0
    return float(1.0 - (weights * observed).sum() / denom)


_STATISTICS = {"spearman": spearman_rho, "kendall": kendall_tau}


def bootstrap_ci_diff(
    human,
    method_a,
    method_b,
    statistic: str = "spearman",
    resamples: int = 10000,
    level: float = 0.95,
    seed: int = 0,
) -> ConfidenceInterval:
    """Percentile bootstrap CI for corr(human, A) - corr(human, B).

    Each resample draws n question-response indices with replacement;
    degenerate draws (a constant resampled vector) are redrawn and counted.
    Deterministic for a fixed seed.
    """
    human = np.asarray(human, dtype=float)
    a = np.asarray(method_a, dtype=float)
    b = np.asarray(method_b, dtype=float)
    n = len(human)
    if len(a) != n or len(b) != n:
        raise ValueError("all three sample vectors must have equal length")
    if n < 5:
        raise TooSmallSample(f"need n >= 5, got {n}")
    if resamples < 1:
        raise ValueError("resamples must be positive")
    stat = _STATISTICS[statistic]

    observed_a = stat(human, a)
    observed_b = stat(human, b)
    if observed_a is None or observed_b is None:
        raise NonConvergentResampling("full-sample statistic is degenerate")
    observed = observed_a - observed_b

    rng = np.random.default_rng(seed)
    diffs = np.empty(resamples)
    redraws = 0
    for r in range(resamples):
        while True:
            idx = rng.integers(0, n, size=n)
            ra = stat(human[idx], a[idx])
            rb = stat(human[idx], b[idx])
            if ra is not None and rb is not None:
                diffs[r] = ra - rb
                break
            redraws += 1
            if redraws > resamples // 2:
                raise NonConvergentResampling(
                    "more than half of the bootstrap draws were degenerate"
                )
    lo = float(np.percentile(diffs, 100 * (1 - level) / 2))
    hi = float(np.percentile(diffs, 100 * (1 + level) / 2))
    return ConfidenceInterval(
        lower=lo,
        upper=hi,
        level=level,
        resamples=resamples,
        seed=seed,
        observed_diff=float(observed),
        redraws=redraws,
    )


def roc_auc(scores, labels) -> RocResult:
    """ROC curve and AUC from scores and binary labels.

    AUC follows the rank (Mann-Whitney) formulation with half credit for
    tied scores; curve points come from a descending-score threshold sweep.
    """
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be equal-length vectors")
    pos = int(np.sum(labels == 1))
    neg = int(np.sum(labels == 0))
    if pos == 0 or neg == 0:
        raise SingleClass("labels contain only one class")

    ranks = _average_ranks(scores)
    auc = (float(np.sum(ranks[labels == 1])) - pos * (pos + 1) / 2) / (pos * neg)

    order = np.argsort(-scores, kind="stable")
    points = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        for k in order[i : j + 1]:
            if labels[k] == 1:
                tp += 1
            else:
                fp += 1
        points.append((fp / neg, tp / pos))
        i = j + 1
    return RocResult(points=tuple(points), auc=float(auc))
