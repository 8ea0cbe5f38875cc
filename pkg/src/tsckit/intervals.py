"""Interval-based tree ensembles: TSF, RISE, and the composed pipeline path.

There are two ways to construct these ensembles. The fixed builders
(tsf_fit / rise_fit) hard-code the feature recipe; composed_fit assembles
the same kind of model from a segmenter, a feature-function list and a
base learner. Both paths share the interval sampler, the feature kernels
and the tree learner, so a composed TSF is bit-identical to the fixed one
under the same seed. Features are laid out interval-major: all functions
of interval 0, then all of interval 1, and so on.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .exceptions import IntervalInfeasible, LengthMismatch
from .trees import TreeConfig, ensemble_predict_proba, fit_decision_tree, predict_proba_tree


@dataclass(frozen=True)
class TsfConfig:
    n_trees: int = 100
    n_intervals: object = "sqrt"  # "sqrt" | int
    min_interval_length: int = 3
    seed: int = 0


@dataclass(frozen=True)
class RiseConfig:
    n_trees: int = 50
    min_interval_length: int = 5
    acf_maxlag: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.min_interval_length < 2:
            raise ValueError("min_interval_length must be >= 2")


@dataclass(frozen=True)
class RandomIntervals:
    """Segmenter drawing k random intervals per member (k='sqrt' or int)."""

    k: object = "sqrt"
    min_length: int = 3


@dataclass(frozen=True)
class SingleRandomInterval:
    """Segmenter drawing one random interval of at least min_length."""

    min_length: int = 5


@dataclass(frozen=True)
class ComposedPipelineSpec:
    segmenter: object
    feature_functions: tuple
    base_learner: TreeConfig
    n_members: int

    def __post_init__(self):
        object.__setattr__(self, "feature_functions", tuple(self.feature_functions))
        if not self.feature_functions:
            raise ValueError("feature_functions must be non-empty")
        unknown = [f for f in self.feature_functions if f not in _FEATURE_FUNCTIONS]
        if unknown:
            raise ValueError(f"unknown feature functions: {unknown}")
        if self.n_members < 1:
            raise ValueError("n_members must be >= 1")


@dataclass(frozen=True)
class EnsembleMember:
    intervals: tuple  # of (start, length)
    tree: object


@dataclass(frozen=True)
class IntervalEnsembleModel:
    members: tuple
    feature_plan: tuple
    acf_maxlag: int
    class_labels: tuple
    series_length: int


def sample_intervals(series_length, how_many, min_length, rng):
    """Random (start, length) pairs; start uniform, then length uniform given start."""
    if min_length > series_length:
        raise IntervalInfeasible(
            f"min_length {min_length} exceeds series length {series_length}"
        )
    out = []
    for _ in range(how_many):
        start = int(rng.integers(0, series_length - min_length + 1))
        length = int(rng.integers(min_length, series_length - start + 1))
        out.append((start, length))
    return out


def _acf_feature(segment, maxlag):
    return kernels.acf_coefs(segment, maxlag)


_FEATURE_FUNCTIONS = {
    "mean": lambda seg, maxlag: np.array([kernels.interval_mean(seg)]),
    "std": lambda seg, maxlag: np.array([kernels.interval_std(seg)]),
    "slope": lambda seg, maxlag: np.array([kernels.interval_slope(seg)]),
    "acf": _acf_feature,
    "power_spectrum": lambda seg, maxlag: kernels.power_spectrum(seg),
}

TSF_FEATURE_PLAN = ("mean", "std", "slope")
RISE_FEATURE_PLAN = ("acf", "power_spectrum")


def _member_features(values, intervals, plan, maxlag):
    """Feature row for one series under one member's intervals."""
    parts = []
    for start, length in intervals:
        segment = values[start : start + length]
        for name in plan:
            parts.append(np.atleast_1d(_FEATURE_FUNCTIONS[name](segment, maxlag)))
    return np.concatenate(parts)


def _fit_member_tree(train, intervals, plan, maxlag, tree_config, rng):
    X = np.vstack(
        [_member_features(c.values, intervals, plan, maxlag) for c in train.series]
    )
    return fit_decision_tree(
        X, train.label_indices, tree_config, len(train.class_labels), rng
    )


def tsf_fit(train, config):
    """Time series forest: per tree, k random intervals x (mean, std, slope)."""
    length = train.series_length
    if config.n_intervals == "sqrt":
        k = int(math.ceil(math.sqrt(length)))
    else:
        k = int(config.n_intervals)
    tree_config = TreeConfig(seed=config.seed)
    members = []
    for i in range(config.n_trees):
        rng = np.random.default_rng((config.seed, i))
        intervals = tuple(
            sample_intervals(length, k, config.min_interval_length, rng)
        )
        tree = _fit_member_tree(train, intervals, TSF_FEATURE_PLAN, 0, tree_config, rng)
        members.append(EnsembleMember(intervals, tree))
    return IntervalEnsembleModel(
        tuple(members), TSF_FEATURE_PLAN, 0, train.class_labels, length
    )


def rise_fit(train, config):
    """Random interval spectral ensemble: one interval per tree, acf + power
    spectrum features. The first member always sees the whole series."""
    length = train.series_length
    if length < config.min_interval_length:
        raise IntervalInfeasible("series shorter than min_interval_length")
    tree_config = TreeConfig(seed=config.seed)
    members = []
    for i in range(config.n_trees):
        rng = np.random.default_rng((config.seed, i))
        if i == 0:
            intervals = ((0, length),)
        else:
            intervals = tuple(
                sample_intervals(length, 1, config.min_interval_length, rng)
            )
        tree = _fit_member_tree(
            train, intervals, RISE_FEATURE_PLAN, config.acf_maxlag, tree_config, rng
        )
        members.append(EnsembleMember(intervals, tree))
    return IntervalEnsembleModel(
        tuple(members), RISE_FEATURE_PLAN, config.acf_maxlag, train.class_labels, length
    )


def composed_fit(train, spec, seed=0):
    """Generic segment -> feature-union -> tree pipeline, replicated n_members
    times. With a RandomIntervals segmenter and (mean, std, slope) features
    this reconstructs TSF exactly; with SingleRandomInterval and
    (acf, power_spectrum) it is a RISE-style ensemble."""
    length = train.series_length
    maxlag = 100
    members = []
    for i in range(spec.n_members):
        rng = np.random.default_rng((seed, i))
        if isinstance(spec.segmenter, RandomIntervals):
            if spec.segmenter.k == "sqrt":
                k = int(math.ceil(math.sqrt(length)))
            else:
                k = int(spec.segmenter.k)
            intervals = tuple(
                sample_intervals(length, k, spec.segmenter.min_length, rng)
            )
        elif isinstance(spec.segmenter, SingleRandomInterval):
            intervals = tuple(
                sample_intervals(length, 1, spec.segmenter.min_length, rng)
            )
        else:
            raise ValueError(f"unknown segmenter {spec.segmenter!r}")
        tree = _fit_member_tree(
            train, intervals, spec.feature_functions, maxlag, spec.base_learner, rng
        )
        members.append(EnsembleMember(intervals, tree))
    return IntervalEnsembleModel(
        tuple(members), spec.feature_functions, maxlag, train.class_labels, length
    )


def interval_predict_proba(model, test):
    """Average the member tree distributions for every test case."""
    if test.series_length != model.series_length:
        raise LengthMismatch(
            f"test length {test.series_length} != train length {model.series_length}"
        )
    out = np.empty((test.n_cases, len(model.class_labels)))
    for row, case in enumerate(test.series):
        per_member = [
            predict_proba_tree(
                m.tree,
                _member_features(case.values, m.intervals, model.feature_plan, model.acf_maxlag),
            )
            for m in model.members
        ]
        out[row] = ensemble_predict_proba(per_member, mode="average")
    return out
