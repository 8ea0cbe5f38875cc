import math

import numpy as np
import pytest
from sklearn.metrics import balanced_accuracy_score, roc_auc_score

from tsckit.exceptions import EmptyResults
from tsckit.metrics import MetricSet, compute_metrics, midranks
from tsckit.results import ClassifierResults


def _results(true, proba):
    return ClassifierResults.from_probabilities(
        "p", "c", 0, "", np.asarray(true), np.asarray(proba, dtype=float), 0, 0
    )


def test_midranks_against_scipy():
    from scipy.stats import rankdata

    rng = np.random.default_rng(0)
    for _ in range(30):
        x = rng.choice([1.0, 2.0, 2.0, 3.0, 5.0], size=12)
        assert midranks(x) == pytest.approx(rankdata(x))


def test_perfect_predictions():
    true = [0, 1, 2, 1]
    proba = np.eye(3)[true]
    m = compute_metrics(_results(true, proba), 3)
    assert m == MetricSet(1.0, 1.0, 1.0, 0.0)


def test_uniform_probabilities_nll():
    for c in (2, 4, 8):
        true = list(range(c))
        proba = np.full((c, c), 1.0 / c)
        m = compute_metrics(_results(true, proba), c)
        assert m.nll == pytest.approx(math.log2(c))


def test_binary_auc_perfect_ranking():
    true = [1, 1, 0, 0]
    p1 = [0.9, 0.8, 0.3, 0.1]
    proba = np.column_stack([1 - np.array(p1), p1])
    m = compute_metrics(_results(true, proba), 2)
    assert m.auc == pytest.approx(1.0)


def test_auc_and_balanced_accuracy_against_sklearn():
    rng = np.random.default_rng(1)
    for n_classes in (2, 3, 4):
        for _ in range(10):
            n = 40
            true = rng.integers(0, n_classes, size=n)
            for c in range(n_classes):
                true[c] = c  # every class present
            raw = rng.uniform(0.05, 1.0, size=(n, n_classes))
            proba = raw / raw.sum(axis=1, keepdims=True)
            m = compute_metrics(_results(true, proba), n_classes)
            if n_classes == 2:
                expected_auc = roc_auc_score(true, proba[:, 1])
            else:
                expected_auc = roc_auc_score(
                    true, proba, multi_class="ovr", average="weighted"
                )
            assert m.auc == pytest.approx(expected_auc, abs=1e-10)
            assert m.balanced_accuracy == pytest.approx(
                balanced_accuracy_score(true, proba.argmax(axis=1))
            )


def test_balanced_equals_accuracy_when_balanced():
    rng = np.random.default_rng(2)
    true = np.array([0] * 10 + [1] * 10)
    raw = rng.uniform(0.05, 1.0, size=(20, 2))
    proba = raw / raw.sum(axis=1, keepdims=True)
    m = compute_metrics(_results(true, proba), 2)
    pred = proba.argmax(axis=1)
    # balanced == plain accuracy iff per-class recalls average to the mean
    if (pred[:10] == 0).mean() == (pred[10:] == 1).mean():
        assert m.balanced_accuracy == pytest.approx(m.accuracy)


def test_accuracy_bounds():
    rng = np.random.default_rng(3)
    true = rng.integers(0, 3, size=30)
    raw = rng.uniform(0.05, 1.0, size=(30, 3))
    proba = raw / raw.sum(axis=1, keepdims=True)
    m = compute_metrics(_results(true, proba), 3)
    assert 0.0 <= m.accuracy <= 1.0
    assert 0.0 <= m.balanced_accuracy <= 1.0
    assert 0.0 <= m.auc <= 1.0
    assert m.nll >= 0.0


def test_empty_results_rejected():
    with pytest.raises(EmptyResults):
        ClassifierResults.from_probabilities(
            "p", "c", 0, "", np.array([], dtype=int), np.empty((0, 2)), 0, 0
        )
