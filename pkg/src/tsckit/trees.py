"""From-scratch decision tree and random forest base learners.

Fully pinned semantics for reproducibility: midpoint thresholds between
consecutive distinct sorted values, ties in gain broken by lowest feature
index then lowest threshold, routing sends value <= threshold left.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, EmptyTrainingSet, InconsistentDimensions


@dataclass(frozen=True)
class Leaf:
    distribution: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.distribution, dtype=np.float64)
        d.flags.writeable = False
        object.__setattr__(self, "distribution", d)


@dataclass(frozen=True)
class Internal:
    feature_index: int
    threshold: float
    left: object
    right: object


@dataclass(frozen=True)
class TreeConfig:
    split_criterion: str = "gini"
    max_features: object = "all"  # "all" | "sqrt" | int
    min_leaf_size: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.split_criterion not in ("gini", "entropy"):
            raise ValueError(f"unknown criterion {self.split_criterion!r}")
        if self.min_leaf_size < 1:
            raise ValueError("min_leaf_size must be >= 1")


@dataclass(frozen=True)
class ForestModel:
    trees: tuple
    n_classes: int

    def __post_init__(self):
        if not self.trees:
            raise EmptyTrainingSet("forest must contain at least one tree")
        object.__setattr__(self, "trees", tuple(self.trees))


def _impurity(counts, criterion):
    total = counts.sum()
    p = counts[counts > 0] / total
    if criterion == "gini":
        return 1.0 - float(np.dot(p, p))
    return -float(np.dot(p, np.log2(p)))


def _n_candidate_features(max_features, n_features):
    if max_features == "all":
        return n_features
    if max_features == "sqrt":
        return max(1, int(round(math.sqrt(n_features))))
    k = int(max_features)
    if k < 1:
        raise ValueError("max_features integer must be >= 1")
    return min(k, n_features)


def fit_decision_tree(X, y, config, n_classes=None, rng=None):
    """Grow an unpruned tree on a float feature matrix and class indices."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.intp)
    if X.ndim != 2 or X.shape[0] != len(y):
        raise InconsistentDimensions("X must be 2-d with one row per label")
    if X.shape[0] == 0:
        raise EmptyTrainingSet("cannot fit a tree on zero rows")
    if not np.all(np.isfinite(X)):
        raise ValueError("features must be finite")
    if n_classes is None:
        n_classes = int(y.max()) + 1
    if rng is None:
        rng = np.random.default_rng(config.seed)
    return _grow(X, y, config, n_classes, rng)


def _grow(X, y, config, n_classes, rng):
    counts = np.bincount(y, minlength=n_classes).astype(np.float64)
    n = len(y)
    if np.count_nonzero(counts) <= 1 or n < 2 * config.min_leaf_size:
        return Leaf(counts / n)

    n_features = X.shape[1]
    k = _n_candidate_features(config.max_features, n_features)
    if k == n_features:
        candidates = np.arange(n_features)
    else:
        candidates = np.sort(rng.choice(n_features, size=k, replace=False))

    parent_impurity = _impurity(counts, config.split_criterion)
    best_gain = 0.0
    best = None
    for f in candidates:
        column = X[:, f]
        order = np.argsort(column, kind="stable")
        sorted_vals = column[order]
        sorted_y = y[order]
        left_counts = np.zeros(n_classes)
        for p in range(1, n):
            left_counts[sorted_y[p - 1]] += 1
            if sorted_vals[p] == sorted_vals[p - 1]:
                continue
            if p < config.min_leaf_size or n - p < config.min_leaf_size:
                continue
            right_counts = counts - left_counts
            child = (
                p / n * _impurity(left_counts, config.split_criterion)
                + (n - p) / n * _impurity(right_counts, config.split_criterion)
            )
            gain = parent_impurity - child
            if gain > best_gain + 1e-12:
                best_gain = gain
                best = (int(f), float((sorted_vals[p - 1] + sorted_vals[p]) / 2.0))
    if best is None:
        return Leaf(counts / n)

    f, threshold = best
    mask = X[:, f] <= threshold
    left = _grow(X[mask], y[mask], config, n_classes, rng)
    right = _grow(X[~mask], y[~mask], config, n_classes, rng)
    return Internal(f, threshold, left, right)


def predict_proba_tree(tree, x):
    """Route one feature row to a leaf distribution (value <= threshold: left)."""
    x = np.asarray(x, dtype=np.float64)
    node = tree
    while isinstance(node, Internal):
        if node.feature_index >= len(x):
            raise DimensionMismatch(
                f"row has {len(x)} features, tree needs index {node.feature_index}"
            )
        node = node.left if x[node.feature_index] <= node.threshold else node.right
    return node.distribution


def fit_random_forest(X, y, n_trees, config, n_classes=None):
    """Bootstrap + sqrt-feature forest; tree i is seeded from (config.seed, i)."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.intp)
    if X.shape[0] == 0:
        raise EmptyTrainingSet("cannot fit a forest on zero rows")
    if n_trees < 1:
        raise ValueError("n_trees must be >= 1")
    if n_classes is None:
        n_classes = int(y.max()) + 1
    tree_config = TreeConfig(
        split_criterion=config.split_criterion,
        max_features="sqrt",
        min_leaf_size=config.min_leaf_size,
        seed=config.seed,
    )
    trees = []
    n = X.shape[0]
    for i in range(n_trees):
        rng = np.random.default_rng((config.seed, i))
        rows = rng.integers(0, n, size=n)
        trees.append(fit_decision_tree(X[rows], y[rows], tree_config, n_classes, rng))
    return ForestModel(tuple(trees), n_classes)


def predict_proba_forest(forest, x):
    members = [predict_proba_tree(t, x) for t in forest.trees]
    return ensemble_predict_proba(members, mode="average")


def ensemble_predict_proba(members, mode="average"):
    """Combine per-member probability vectors for one case."""
    if len(members) == 0:
        raise InconsistentDimensions("no member predictions to combine")
    try:
        stacked = np.asarray(members, dtype=np.float64)
    except ValueError:
        raise InconsistentDimensions("member vectors have inconsistent lengths")
    if stacked.ndim != 2:
        raise InconsistentDimensions("member vectors have inconsistent lengths")
    if mode == "average":
        return stacked.mean(axis=0)
    if mode == "majority":
        votes = np.bincount(stacked.argmax(axis=1), minlength=stacked.shape[1])
        return votes / votes.sum()
    raise ValueError(f"unknown mode {mode!r}")
