import numpy as np
import pytest

from helpers import make_dataset
from tsckit.exceptions import IntervalInfeasible, LengthMismatch
from tsckit.intervals import (
    RISE_FEATURE_PLAN,
    TSF_FEATURE_PLAN,
    ComposedPipelineSpec,
    RandomIntervals,
    RiseConfig,
    SingleRandomInterval,
    TsfConfig,
    _member_features,
    composed_fit,
    interval_predict_proba,
    rise_fit,
    sample_intervals,
    tsf_fit,
)
from tsckit.synthetic import constant_level_problem, spectral_problem
from tsckit.trees import TreeConfig


def _constant_problem(n_per_class=20, length=20):
    values = np.vstack(
        [np.zeros((n_per_class, length)), np.ones((n_per_class, length))]
    )
    labels = ["z"] * n_per_class + ["o"] * n_per_class
    return make_dataset(values, labels, ("z", "o"))


def test_sample_intervals_forced_full():
    rng = np.random.default_rng(0)
    for _ in range(5):
        assert sample_intervals(7, 3, 7, rng) == [(0, 7)] * 3


def test_sample_intervals_bounds_fuzz():
    rng = np.random.default_rng(1)
    for start, length in sample_intervals(100, 10_000, 3, rng):
        assert 0 <= start <= 97
        assert 3 <= length <= 100 - start


def test_sample_intervals_deterministic():
    a = sample_intervals(50, 20, 3, np.random.default_rng(9))
    b = sample_intervals(50, 20, 3, np.random.default_rng(9))
    assert a == b


def test_sample_intervals_infeasible():
    with pytest.raises(IntervalInfeasible):
        sample_intervals(4, 1, 5, np.random.default_rng(0))


def test_tsf_separates_constant_levels():
    train = _constant_problem()
    model = tsf_fit(train, TsfConfig(n_trees=20, seed=0))
    proba = interval_predict_proba(model, train)
    assert (proba.argmax(axis=1) == train.label_indices).all()
    assert np.allclose(proba.sum(axis=1), 1.0)


def test_tsf_sqrt_interval_count():
    rng = np.random.default_rng(2)
    train = make_dataset(rng.normal(size=(6, 144)), ["a", "b", "a", "b", "a", "b"])
    model = tsf_fit(train, TsfConfig(n_trees=3, seed=1))
    for member in model.members:
        assert len(member.intervals) == 12  # ceil(sqrt(144))
        features = _member_features(
            train.series[0].values, member.intervals, model.feature_plan, 0
        )
        assert len(features) == 36


def test_tsf_deterministic():
    rng = np.random.default_rng(3)
    train = make_dataset(rng.normal(size=(10, 30)), list("ababababab"))
    test = make_dataset(rng.normal(size=(6, 30)), list("ababab"))
    p1 = interval_predict_proba(tsf_fit(train, TsfConfig(n_trees=10, seed=4)), test)
    p2 = interval_predict_proba(tsf_fit(train, TsfConfig(n_trees=10, seed=4)), test)
    assert np.array_equal(p1, p2)


def test_composed_tsf_identical_to_fixed():
    rng = np.random.default_rng(4)
    train = make_dataset(rng.normal(size=(12, 40)), list("abababababab"))
    test = make_dataset(rng.normal(size=(8, 40)), list("abababab"))
    seed = 11
    fixed = tsf_fit(train, TsfConfig(n_trees=15, seed=seed))
    spec = ComposedPipelineSpec(
        RandomIntervals("sqrt"), TSF_FEATURE_PLAN, TreeConfig(seed=seed), 15
    )
    composed = composed_fit(train, spec, seed=seed)
    assert [m.intervals for m in fixed.members] == [m.intervals for m in composed.members]
    assert np.array_equal(
        interval_predict_proba(fixed, test), interval_predict_proba(composed, test)
    )


def test_rise_feature_lengths():
    rng = np.random.default_rng(5)
    train = make_dataset(rng.normal(size=(4, 64)), ["a", "b", "a", "b"])
    model = rise_fit(train, RiseConfig(n_trees=5, seed=0))
    assert model.members[0].intervals == ((0, 64),)
    for member in model.members:
        (start, length) = member.intervals[0]
        features = _member_features(
            train.series[0].values, member.intervals, RISE_FEATURE_PLAN, 100
        )
        assert len(features) == min(length - 1, 100) + length // 2


def test_rise_separates_spectral_problem():
    train, _ = spectral_problem(n_per_class=10, length=64, seed=3)
    model = rise_fit(train, RiseConfig(n_trees=20, seed=0))
    proba = interval_predict_proba(model, train)
    assert (proba.argmax(axis=1) == train.label_indices).all()


def test_rise_constant_dataset_zero_variance_guard():
    train = _constant_problem(n_per_class=5, length=16)
    model = rise_fit(train, RiseConfig(n_trees=5, seed=0))
    proba = interval_predict_proba(model, train)
    assert np.allclose(proba.sum(axis=1), 1.0)
    # the acf part of any member's features is exactly zero on constants
    member = model.members[1]
    (start, length) = member.intervals[0]
    features = _member_features(
        train.series[0].values, member.intervals, RISE_FEATURE_PLAN, 100
    )
    assert np.array_equal(features[: min(length - 1, 100)], np.zeros(min(length - 1, 100)))


def test_composed_rise_statistically_close_to_fixed():
    train, test = spectral_problem(n_per_class=8, length=64, seed=5)
    gaps = []
    for seed in range(10):
        fixed = rise_fit(train, RiseConfig(n_trees=10, seed=seed))
        spec = ComposedPipelineSpec(
            SingleRandomInterval(5), RISE_FEATURE_PLAN, TreeConfig(seed=seed), 10
        )
        composed = composed_fit(train, spec, seed=seed)
        acc_fixed = (
            interval_predict_proba(fixed, test).argmax(axis=1) == test.label_indices
        ).mean()
        acc_composed = (
            interval_predict_proba(composed, test).argmax(axis=1) == test.label_indices
        ).mean()
        gaps.append(abs(acc_fixed - acc_composed))
    assert np.mean(gaps) <= 0.05


def test_composed_empty_feature_functions_rejected():
    with pytest.raises(ValueError):
        ComposedPipelineSpec(RandomIntervals("sqrt"), (), TreeConfig(), 5)
    with pytest.raises(ValueError):
        ComposedPipelineSpec(RandomIntervals("sqrt"), ("nope",), TreeConfig(), 5)


def test_predict_length_mismatch():
    train = _constant_problem(n_per_class=3, length=12)
    model = tsf_fit(train, TsfConfig(n_trees=2, seed=0))
    bad = make_dataset(np.zeros((2, 13)), ["z", "o"], ("z", "o"))
    with pytest.raises(LengthMismatch):
        interval_predict_proba(model, bad)


def test_build_time_linear_in_n_trees():
    import time

    rng = np.random.default_rng(6)
    train = make_dataset(rng.normal(size=(40, 144)), ["a", "b"] * 20)
    tsf_fit(train, TsfConfig(n_trees=5, seed=0))  # warm caches

    def timed(n_trees):
        t0 = time.perf_counter()
        tsf_fit(train, TsfConfig(n_trees=n_trees, seed=0))
        return time.perf_counter() - t0

    ratio = timed(40) / timed(20)
    assert 1.4 <= ratio <= 2.6  # 2x within 30%
