"""Per-run classification metrics: accuracy, balanced accuracy, AUC, NLL."""

from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyResults

PROBABILITY_FLOOR = 1e-6


@dataclass(frozen=True)
class MetricSet:
    accuracy: float
    balanced_accuracy: float
    auc: float
    nll: float


def midranks(x):
    """1-based ranks with ties sharing their average rank."""
    x = np.asarray(x)
    order = np.argsort(x, kind="mergesort")
    ranks = np.empty(len(x), dtype=np.float64)
    sorted_x = x[order]
    i = 0
    while i < len(x):
        j = i
        while j + 1 < len(x) and sorted_x[j + 1] == sorted_x[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _binary_auc(scores, positives):
    """Rank-form ROC AUC, equivalent to trapezoidal with midrank ties."""
    n_pos = int(positives.sum())
    n_neg = len(positives) - n_pos
    ranks = midranks(scores)
    return (float(ranks[positives].sum()) - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def compute_metrics(results, n_classes):
    """MetricSet over one results record.

    AUC is the class-frequency-weighted one-vs-rest area; NLL is the mean
    negative log2 of the floored probability assigned to the true class.
    """
    true = np.asarray(results.true_class_indices, dtype=np.intp)
    pred = np.asarray(results.predicted_class_indices, dtype=np.intp)
    proba = np.asarray(results.probabilities, dtype=np.float64)
    n = len(true)
    if n == 0:
        raise EmptyResults("no predictions to score")

    accuracy = float((true == pred).mean())

    recalls = []
    for c in range(n_classes):
        mask = true == c
        if mask.any():
            recalls.append(float((pred[mask] == c).mean()))
    balanced = float(np.mean(recalls))

    weighted = 0.0
    weight_total = 0.0
    for c in range(n_classes):
        positives = true == c
        n_pos = int(positives.sum())
        if n_pos == 0 or n_pos == n:
            continue
        weighted += n_pos / n * _binary_auc(proba[:, c], positives)
        weight_total += n_pos / n
    auc = weighted / weight_total if weight_total > 0 else 1.0

    p_true = np.maximum(proba[np.arange(n), true], PROBABILITY_FLOOR)
    nll = float(-np.mean(np.log2(p_true)))

    return MetricSet(accuracy, balanced, auc, nll)
