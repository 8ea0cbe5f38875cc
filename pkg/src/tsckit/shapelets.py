"""Contracted random shapelet search and the shapelet-transform classifier."""

import math
import time
from dataclasses import dataclass

import numpy as np

from .distances import kernels as _kernels
from .exceptions import (
    ContractTooSmall,
    DegenerateLabels,
    LengthMismatch,
    ShapeletTooLong,
)
from .kernels import znormalize
from .trees import TreeConfig, fit_random_forest, predict_proba_forest


@dataclass(frozen=True)
class Shapelet:
    values: np.ndarray  # z-normalized
    source_case: int
    source_start: int
    quality: float
    class_origin: str

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def length(self):
        return len(self.values)


@dataclass(frozen=True)
class StcConfig:
    max_candidates: int = None
    contract_minutes: float = 300.0
    max_retained: int = None  # default 10 x n_cases, capped at 1000
    min_len: int = 3
    max_len: int = None  # default series_length
    forest_trees: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.max_candidates is not None and self.max_candidates < 1:
            raise ContractTooSmall("max_candidates must be >= 1")
        if self.max_candidates is None and (
            self.contract_minutes is None or self.contract_minutes <= 0
        ):
            raise ContractTooSmall("either max_candidates or contract_minutes required")


@dataclass(frozen=True)
class StcModel:
    shapelets: tuple
    forest: object
    class_labels: tuple
    series_length: int


def subsequence_distance(shapelet_values, series):
    """Min over alignments of the mean squared difference between the
    shapelet and the z-normalized window of matching length."""
    shapelet_values = np.ascontiguousarray(shapelet_values, dtype=np.float64)
    series = np.ascontiguousarray(series, dtype=np.float64)
    if len(shapelet_values) > len(series):
        raise ShapeletTooLong(
            f"shapelet length {len(shapelet_values)} exceeds series length {len(series)}"
        )
    return float(_kernels.min_subsequence_dist(shapelet_values, series))


def shapelet_quality(distances, labels, class_origin):
    """Best one-vs-rest information gain (bits) over threshold splits of the
    per-case distances."""
    distances = np.asarray(distances, dtype=np.float64)
    labels = np.asarray(labels)
    if len(distances) < 2 or len(set(labels.tolist())) < 2:
        raise DegenerateLabels("quality needs >= 2 cases spanning >= 2 classes")
    binary = (labels == class_origin).astype(np.intp)
    order = np.argsort(distances, kind="stable")
    sorted_d = distances[order]
    sorted_pos = binary[order]
    n = len(sorted_d)
    total_pos = int(sorted_pos.sum())
    parent = _binary_entropy(total_pos, n)
    best = 0.0
    left_pos = 0
    for i in range(1, n):
        left_pos += int(sorted_pos[i - 1])
        if sorted_d[i] == sorted_d[i - 1]:
            continue
        h_left = _binary_entropy(left_pos, i)
        h_right = _binary_entropy(total_pos - left_pos, n - i)
        gain = parent - (i / n) * h_left - ((n - i) / n) * h_right
        if gain > best:
            best = gain
    return best


def _binary_entropy(positives, total):
    if positives == 0 or positives == total:
        return 0.0
    p = positives / total
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def random_shapelet_search(train, config):
    """Sample, score and retain shapelets under a candidate-count or
    wall-clock contract.

    Source cases rotate round-robin over the classes so minority classes
    contribute candidates. Retention keeps the best-quality candidates,
    dropping any that overlap an already-kept span of the same case.
    """
    if len(set(c.label for c in train.series)) < 2:
        raise DegenerateLabels("shapelet search needs >= 2 classes")
    length = train.series_length
    max_len = min(config.max_len or length, length)
    if config.min_len > max_len:
        raise ContractTooSmall("min_len exceeds max_len")
    rng = np.random.default_rng(config.seed)
    labels = np.array([c.label for c in train.series])
    by_class = [np.flatnonzero(labels == lab) for lab in train.class_labels]
    by_class = [idx for idx in by_class if len(idx)]

    candidates = []

    def evaluate(t):
        pool = by_class[t % len(by_class)]
        case_idx = int(pool[rng.integers(0, len(pool))])
        shp_len = int(rng.integers(config.min_len, max_len + 1))
        start = int(rng.integers(0, length - shp_len + 1))
        values = znormalize(train.series[case_idx].values[start : start + shp_len])
        dists = [
            float(_kernels.min_subsequence_dist(values, c.values))
            for c in train.series
        ]
        quality = shapelet_quality(dists, labels, train.series[case_idx].label)
        candidates.append(
            Shapelet(values, case_idx, start, quality, train.series[case_idx].label)
        )

    if config.max_candidates is not None:
        for t in range(config.max_candidates):
            evaluate(t)
    else:
        deadline = time.monotonic() + config.contract_minutes * 60.0
        t = 0
        while time.monotonic() < deadline:
            evaluate(t)
            t += 1
    if not candidates:
        raise ContractTooSmall("contract expired before any candidate was scored")

    max_retained = config.max_retained
    if max_retained is None:
        max_retained = min(10 * train.n_cases, 1000)
    ranked = sorted(
        candidates, key=lambda s: (-s.quality, s.source_case, s.source_start)
    )
    kept = []
    for cand in ranked:
        if len(kept) == max_retained:
            break
        overlaps = any(
            k.source_case == cand.source_case
            and cand.source_start < k.source_start + k.length
            and k.source_start < cand.source_start + cand.length
            for k in kept
        )
        if not overlaps:
            kept.append(cand)
    return tuple(kept)


def shapelet_transform(shapelets, dataset):
    """(n_cases, n_shapelets) matrix of min subsequence distances."""
    out = np.empty((dataset.n_cases, len(shapelets)))
    for i, case in enumerate(dataset.series):
        for j, s in enumerate(shapelets):
            out[i, j] = _kernels.min_subsequence_dist(s.values, case.values)
    return out


def stc_fit(train, config):
    """Shapelet search, train transform, then a random forest on distances."""
    shapelets = random_shapelet_search(train, config)
    X = shapelet_transform(shapelets, train)
    forest = fit_random_forest(
        X,
        train.label_indices,
        config.forest_trees,
        TreeConfig(seed=config.seed),
        n_classes=len(train.class_labels),
    )
    return StcModel(shapelets, forest, train.class_labels, train.series_length)


def stc_predict_proba(model, test):
    if test.series_length != model.series_length:
        raise LengthMismatch(
            f"test length {test.series_length} != train length {model.series_length}"
        )
    X = shapelet_transform(model.shapelets, test)
    return np.vstack([predict_proba_forest(model.forest, row) for row in X])
