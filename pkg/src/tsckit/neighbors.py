"""Distance-based classifiers: 1NN, LOOCV tuning, the Elastic Ensemble and
the Proximity Forest."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distances import DistanceSpec, distance, ee_parameter_grid
from .distances.grids import TWED_NU_VALUES
from .exceptions import GridEmpty, LengthMismatch, SingleClassNode
from .trees import ensemble_predict_proba

# the 11 ensemble constituents; *cv names tune their window over the grid
EE_CONSTITUENTS = (
    "euclidean",
    "dtw",
    "ddtw",
    "dtwcv",
    "ddtwcv",
    "wdtw",
    "wddtw",
    "lcss",
    "erp",
    "msm",
    "twed",
)

_UNTUNED_SPECS = {
    "euclidean": ("euclidean", {}),
    "dtw": ("dtw", {"w": 1.0}),
    "ddtw": ("ddtw", {"w": 1.0}),
}

_CV_FAMILY = {"dtwcv": "dtw", "ddtwcv": "ddtw"}


@dataclass(frozen=True)
class NnModel:
    train: object  # TimeSeriesDataset
    spec: DistanceSpec

    def __post_init__(self):
        if self.train.n_cases == 0:
            raise ValueError("1NN needs a non-empty training set")


def nn1_classify(model, query):
    """Nearest train case under the model's spec; ties go to the earliest
    train index. Returns (label, one-hot probability vector)."""
    query = np.ascontiguousarray(query, dtype=np.float64)
    if len(query) != model.train.series_length:
        raise LengthMismatch(
            f"query length {len(query)} != train length {model.train.series_length}"
        )
    best = math.inf
    best_idx = 0
    for i, case in enumerate(model.train.series):
        d = distance(case.values, query, model.spec, cutoff=best)
        if d < best:
            best = d
            best_idx = i
    label = model.train.series[best_idx].label
    proba = np.zeros(len(model.train.class_labels))
    proba[model.train.class_labels.index(label)] = 1.0
    return label, proba


def _loo_accuracy(train, spec, held_out=None):
    """1NN accuracy where each held-out case is classified against all other
    train cases."""
    labels = train.label_indices
    indices = range(train.n_cases) if held_out is None else held_out
    correct = 0
    total = 0
    for i in indices:
        best = math.inf
        best_j = -1
        for j in range(train.n_cases):
            if j == i:
                continue
            d = distance(
                train.series[j].values, train.series[i].values, spec, cutoff=best
            )
            if d < best:
                best = d
                best_j = j
        correct += int(labels[best_j] == labels[i])
        total += 1
    return correct / total


def _stratified_subset(train, size, rng):
    """Per-class proportional subset of case indices, remainders assigned by
    largest fractional share (ties to the earlier class)."""
    labels = train.label_indices
    n = train.n_cases
    groups = [np.flatnonzero(labels == k) for k in range(len(train.class_labels))]
    groups = [g for g in groups if len(g)]
    exact = [len(g) * size / n for g in groups]
    alloc = [int(math.floor(e)) for e in exact]
    remainder = size - sum(alloc)
    by_fraction = sorted(
        range(len(groups)), key=lambda k: (-(exact[k] - alloc[k]), k)
    )
    for k in by_fraction[:remainder]:
        alloc[k] += 1
    chosen = []
    for g, a in zip(groups, alloc):
        a = min(a, len(g))
        chosen.extend(int(v) for v in rng.choice(g, size=a, replace=False))
    return sorted(chosen)


def loocv_tune(train, grid, proportion_of_param_options=1.0,
               proportion_of_train_in_param_finding=1.0, rng=None):
    """Pick the best grid option by (possibly subsampled) LOO 1NN accuracy.

    Returns (best params, cv_accuracy) where cv_accuracy is the winner's
    score recomputed over the full training set.
    """
    if len(grid) == 0:
        raise GridEmpty("parameter grid is empty")
    if rng is None:
        rng = np.random.default_rng(0)
    n_options = math.ceil(proportion_of_param_options * len(grid))
    if n_options < len(grid):
        option_idx = sorted(
            int(v) for v in rng.choice(len(grid), size=n_options, replace=False)
        )
    else:
        option_idx = list(range(len(grid)))
    n_cases = math.ceil(proportion_of_train_in_param_finding * train.n_cases)
    held_out = None
    if n_cases < train.n_cases:
        held_out = _stratified_subset(train, n_cases, rng)

    best_score = -1.0
    best_idx = None
    for gi in option_idx:
        spec = DistanceSpec(grid.measure, dict(grid.options[gi]))
        score = _loo_accuracy(train, spec, held_out)
        if score > best_score:
            best_score = score
            best_idx = gi
    best_params = dict(grid.options[best_idx])
    cv_accuracy = _loo_accuracy(
        train, DistanceSpec(grid.measure, best_params), None
    )
    return best_params, cv_accuracy


@dataclass(frozen=True)
class EeConfig:
    proportion_of_param_options: float = 1.0
    proportion_of_train_in_param_finding: float = 1.0
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not 0.0 < self.proportion_of_param_options <= 1.0:
            raise ValueError("proportion_of_param_options must be in (0, 1]")
        if not 0.0 < self.proportion_of_train_in_param_finding <= 1.0:
            raise ValueError("proportion_of_train_in_param_finding must be in (0, 1]")


@dataclass(frozen=True)
class EeConstituent:
    name: str
    spec: DistanceSpec
    cv_accuracy: float
    model: NnModel

    def __post_init__(self):
        if not 0.0 <= self.cv_accuracy <= 1.0:
            raise ValueError("cv_accuracy must lie in [0, 1]")


@dataclass(frozen=True)
class EeModel:
    constituents: tuple
    class_labels: tuple

    def __post_init__(self):
        if len(self.constituents) != len(EE_CONSTITUENTS):
            raise ValueError(
                f"an elastic ensemble has {len(EE_CONSTITUENTS)} constituents, "
                f"got {len(self.constituents)}"
            )


def pooled_std(train):
    return float(train.value_matrix.std())


def _fit_constituent(train, name, index, config, sigma):
    rng = np.random.default_rng((config.seed, index))
    if name in _UNTUNED_SPECS:
        measure, params = _UNTUNED_SPECS[name]
        spec = DistanceSpec(measure, dict(params))
        cv = _loo_accuracy(train, spec, None)
    else:
        measure = _CV_FAMILY.get(name, name)
        grid = ee_parameter_grid(
            measure, series_length=train.series_length, pooled_std=sigma
        )
        params, cv = loocv_tune(
            train,
            grid,
            config.proportion_of_param_options,
            config.proportion_of_train_in_param_finding,
            rng,
        )
        spec = DistanceSpec(measure, params)
    return EeConstituent(name, spec, cv, NnModel(train, spec))


def ee_fit(train, config):
    """Tune and score all 11 constituents (independently, optionally in
    parallel threads)."""
    if train.n_cases < 2:
        raise ValueError("EE needs at least 2 training cases")
    sigma = pooled_std(train)
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            constituents = list(
                pool.map(
                    lambda t: _fit_constituent(train, t[1], t[0], config, sigma),
                    enumerate(EE_CONSTITUENTS),
                )
            )
    else:
        constituents = [
            _fit_constituent(train, name, i, config, sigma)
            for i, name in enumerate(EE_CONSTITUENTS)
        ]
    return EeModel(tuple(constituents), train.class_labels)


def ee_predict_proba(model, test):
    """Each constituent votes its 1NN label weighted by its CV accuracy."""
    n_classes = len(model.class_labels)
    out = np.zeros((test.n_cases, n_classes))
    for row, case in enumerate(test.series):
        for constituent in model.constituents:
            label, _ = nn1_classify(constituent.model, case.values)
            out[row, model.class_labels.index(label)] += constituent.cv_accuracy
        total = out[row].sum()
        out[row] = out[row] / total if total > 0 else np.full(n_classes, 1.0 / n_classes)
    return out


# ---------------------------------------------------------------------------
# Proximity forest


@dataclass(frozen=True)
class PfConfig:
    n_trees: int = 100
    n_stump_evaluations: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.n_stump_evaluations < 1:
            raise ValueError("n_stump_evaluations must be >= 1")


@dataclass(frozen=True)
class PfLeaf:
    distribution: np.ndarray


@dataclass(frozen=True)
class PfInternal:
    exemplars: tuple  # value arrays, ordered by class index ascending
    exemplar_classes: tuple
    spec: DistanceSpec
    children: tuple


@dataclass(frozen=True)
class PfModel:
    trees: tuple
    class_labels: tuple
    series_length: int


def sample_pf_spec(rng, series_length, sigma):
    """Uniform measure pick; parameters uniform over the EE grid ranges
    (continuous ranges sampled continuously)."""
    name = EE_CONSTITUENTS[int(rng.integers(0, len(EE_CONSTITUENTS)))]
    sigma = max(sigma, 1e-8)
    if name in _UNTUNED_SPECS:
        measure, params = _UNTUNED_SPECS[name]
        return DistanceSpec(measure, dict(params))
    if name in ("dtwcv", "ddtwcv"):
        return DistanceSpec(_CV_FAMILY[name], {"w": float(rng.uniform(0.0, 0.99))})
    if name in ("wdtw", "wddtw"):
        return DistanceSpec(name, {"g": float(rng.uniform(0.0, 0.99))})
    if name == "lcss":
        return DistanceSpec(
            "lcss",
            {
                "epsilon": float(rng.uniform(sigma / 4, sigma)),
                "delta": int(rng.integers(0, series_length // 4 + 1)),
            },
        )
    if name == "erp":
        return DistanceSpec(
            "erp",
            {
                "g": float(rng.uniform(sigma / 5, sigma)),
                "w": float(rng.uniform(0.0, 0.25)),
            },
        )
    if name == "msm":
        return DistanceSpec("msm", {"c": float(10.0 ** rng.uniform(-2.0, 2.0))})
    if name == "twed":
        return DistanceSpec(
            "twed",
            {
                "nu": float(TWED_NU_VALUES[int(rng.integers(0, len(TWED_NU_VALUES)))]),
                "lambda": float(rng.uniform(0.0, 0.1)),
            },
        )
    raise AssertionError(name)


def pf_generate_candidate_split(values, labels, rng, series_length, sigma):
    """One exemplar per present class, a random spec, and the nearest-exemplar
    partition of the node's instances."""
    present = sorted(set(labels.tolist()))
    if len(present) < 2:
        raise SingleClassNode("cannot split a single-class node")
    exemplar_rows = []
    for cls in present:
        rows = np.flatnonzero(labels == cls)
        exemplar_rows.append(int(rows[rng.integers(0, len(rows))]))
    spec = sample_pf_spec(rng, series_length, sigma)
    assignment = np.empty(len(labels), dtype=np.intp)
    for i in range(len(labels)):
        if i in exemplar_rows:
            assignment[i] = exemplar_rows.index(i)
            continue
        best = math.inf
        best_k = 0
        for k, row in enumerate(exemplar_rows):
            d = distance(values[row], values[i], spec, cutoff=best)
            if d < best:
                best = d
                best_k = k
        assignment[i] = best_k
    return exemplar_rows, spec, assignment


def pf_gini_score(partition_labels):
    """Size-weighted gini impurity of the children (lower is better)."""
    sizes = [len(p) for p in partition_labels]
    n = sum(sizes)
    if n == 0:
        raise ValueError("empty partition")
    score = 0.0
    for part in partition_labels:
        if len(part) == 0:
            continue
        _, counts = np.unique(np.asarray(part), return_counts=True)
        p = counts / len(part)
        score += len(part) / n * (1.0 - float(np.dot(p, p)))
    return score


def pf_fit_tree(values, labels, n_classes, r, rng, series_length, sigma):
    """Grow one proximity tree; pure nodes become one-hot leaves, failed
    splits become distribution leaves."""
    counts = np.bincount(labels, minlength=n_classes)
    if np.count_nonzero(counts) <= 1:
        return PfLeaf(counts / counts.sum())

    best_score = math.inf
    best = None
    for _ in range(r):
        exemplar_rows, spec, assignment = pf_generate_candidate_split(
            values, labels, rng, series_length, sigma
        )
        parts = [labels[assignment == k] for k in range(len(exemplar_rows))]
        score = pf_gini_score(parts)
        if score < best_score:
            best_score = score
            best = (exemplar_rows, spec, assignment)

    exemplar_rows, spec, assignment = best
    sizes = np.bincount(assignment, minlength=len(exemplar_rows))
    if sizes.max() == len(labels):
        return PfLeaf(counts / counts.sum())
    children = []
    for k in range(len(exemplar_rows)):
        mask = assignment == k
        children.append(
            pf_fit_tree(values[mask], labels[mask], n_classes, r, rng, series_length, sigma)
        )
    exemplars = tuple(values[row] for row in exemplar_rows)
    exemplar_classes = tuple(int(labels[row]) for row in exemplar_rows)
    return PfInternal(exemplars, exemplar_classes, spec, tuple(children))


def pf_fit(train, config):
    sigma = pooled_std(train)
    values = train.value_matrix
    labels = train.label_indices
    trees = []
    for i in range(config.n_trees):
        rng = np.random.default_rng((config.seed, i))
        trees.append(
            pf_fit_tree(
                values,
                labels,
                len(train.class_labels),
                config.n_stump_evaluations,
                rng,
                train.series_length,
                sigma,
            )
        )
    return PfModel(tuple(trees), train.class_labels, train.series_length)


def _route(tree, query):
    node = tree
    while isinstance(node, PfInternal):
        best = math.inf
        best_k = 0
        for k, exemplar in enumerate(node.exemplars):
            d = distance(exemplar, query, node.spec, cutoff=best)
            if d < best:
                best = d
                best_k = k
        node = node.children[best_k]
    return node.distribution


def pf_predict_proba(model, test):
    """Majority vote over the per-tree leaf distributions."""
    if test.series_length != model.series_length:
        raise LengthMismatch(
            f"test length {test.series_length} != train length {model.series_length}"
        )
    out = np.empty((test.n_cases, len(model.class_labels)))
    for row, case in enumerate(test.series):
        members = [_route(t, case.values) for t in model.trees]
        out[row] = ensemble_predict_proba(members, mode="majority")
    return out
