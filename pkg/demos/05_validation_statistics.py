"""The statistics harness: rank correlations, kappa, bootstrap CIs, ROC.

Builds a synthetic batch where method A tracks the human ratings closely and
method B is shuffled noise, then shows each validation statistic.
"""

import numpy as np

from respeval import metrics


def main():
    rng = np.random.default_rng(7)
    human = rng.integers(0, 5, size=80).astype(float)
    method_a = np.clip(human + rng.normal(0, 0.7, size=80), 0, 4)
    method_b = rng.permutation(human)

    print("Spearman(human, A):", round(metrics.spearman_rho(human, method_a), 3))
    print("Spearman(human, B):", round(metrics.spearman_rho(human, method_b), 3))
    print("Kendall (human, A):", round(metrics.kendall_tau(human, method_a), 3))

    kappa = metrics.quadratic_weighted_kappa(
        human.astype(int), np.round(method_a).astype(int), range(5)
    )
    print("quadratic-weighted kappa:", round(kappa, 3))

    ci = metrics.bootstrap_ci_diff(human, method_a, method_b, resamples=2000, seed=11)
    print(
        f"bootstrap 95% CI for rho(A) - rho(B): "
        f"[{ci.lower:.3f}, {ci.upper:.3f}] (observed {ci.observed_diff:.3f})"
    )

    labels = (human >= 3).astype(int)
    roc = metrics.roc_auc(method_a, labels)
    print("ROC AUC of method A against accept labels:", round(roc.auc, 3))
    print("ROC points:", len(roc.points))


if __name__ == "__main__":
    main()
