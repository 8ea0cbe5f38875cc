import numpy as np
import pytest

from helpers import make_dataset, random_dataset
from tsckit.datasets import parse_ts_file, serialize_ts_file, stratified_resample
from tsckit.exceptions import (
    IncompatibleDatasets,
    LengthMismatch,
    MalformedHeader,
    MultivariateUnsupported,
    NonNumericValue,
    UnknownLabel,
)

BASIC = """@problemName Tiny
@univariate true
@equalLength true
@seriesLength 3
@classLabel true a b
@data
1.0,2.0,3.0:a
0.0,0.0,0.0:b
"""


def test_parse_basic():
    ds = parse_ts_file(BASIC)
    assert ds.problem_name == "Tiny"
    assert ds.n_cases == 2
    assert ds.series_length == 3
    assert ds.class_labels == ("a", "b")
    assert np.array_equal(ds.series[0].values, [1.0, 2.0, 3.0])
    assert ds.series[1].label == "b"


def test_parse_crlf_and_case_insensitive_directives():
    text = BASIC.replace("\n", "\r\n").replace("@problemName", "@PROBLEMNAME")
    ds = parse_ts_file(text)
    assert ds.problem_name == "Tiny"
    assert ds.n_cases == 2


def test_parse_unknown_directive_ignored():
    ds = parse_ts_file(BASIC.replace("@data", "@timeStamps false\n@data"))
    assert ds.n_cases == 2


def test_parse_comment_lines_ignored():
    ds = parse_ts_file("# archive preamble\n# more\n" + BASIC)
    assert ds.n_cases == 2


def test_parse_length_mismatch():
    with pytest.raises(LengthMismatch):
        parse_ts_file(BASIC.replace("1.0,2.0,3.0:a", "1.0,2.0:a"))


def test_parse_unknown_label():
    with pytest.raises(UnknownLabel):
        parse_ts_file(BASIC.replace("0.0,0.0,0.0:b", "0.0,0.0,0.0:zzz"))


def test_parse_non_numeric():
    with pytest.raises(NonNumericValue):
        parse_ts_file(BASIC.replace("1.0,2.0,3.0:a", "1.0,moo,3.0:a"))


def test_parse_missing_data_directive():
    with pytest.raises(MalformedHeader):
        parse_ts_file(BASIC.replace("@data\n", ""))


def test_parse_missing_class_label():
    with pytest.raises(MalformedHeader):
        parse_ts_file(BASIC.replace("@classLabel true a b\n", ""))


def test_parse_multivariate_rejected():
    with pytest.raises(MultivariateUnsupported):
        parse_ts_file(BASIC.replace("1.0,2.0,3.0:a", "1.0,2.0,3.0:4.0,5.0,6.0:a"))


def test_parse_gunpoint_standin_shape(gunpoint_dir):
    train = parse_ts_file(
        (gunpoint_dir / "GunPoint" / "GunPoint_TRAIN.ts").read_text()
    )
    test = parse_ts_file((gunpoint_dir / "GunPoint" / "GunPoint_TEST.ts").read_text())
    assert train.n_cases == 50
    assert test.n_cases == 150
    assert train.series_length == 150
    assert set(train.class_labels) == {"1", "2"}


def test_round_trip_random_datasets():
    rng = np.random.default_rng(7)
    for _ in range(10):
        ds = random_dataset(rng, int(rng.integers(2, 12)), int(rng.integers(1, 9)))
        again = parse_ts_file(serialize_ts_file(ds))
        assert again.class_labels == ds.class_labels
        assert again.series_length == ds.series_length
        assert again.n_cases == ds.n_cases
        for a, b in zip(again.series, ds.series):
            assert a.label == b.label
            assert np.array_equal(a.values, b.values)


def _counts(ds):
    out = {}
    for c in ds.series:
        out[c.label] = out.get(c.label, 0) + 1
    return out


def test_resample_zero_is_identity():
    train = make_dataset([[1, 2], [3, 4], [5, 6]], ["a", "a", "b"])
    test = make_dataset([[7, 8], [9, 10]], ["a", "b"], ("a", "b"))
    pair = stratified_resample(train, test, 0, 42)
    assert pair.train is train
    assert pair.test is test


def test_resample_preserves_class_counts_and_union():
    rng = np.random.default_rng(3)
    train = random_dataset(rng, 15, 4, n_classes=3)
    test = random_dataset(rng, 9, 4, n_classes=3)
    base_counts = _counts(train)
    union = sorted(
        tuple(c.values.tolist()) + (c.label,) for c in train.series + test.series
    )
    for rid in range(1, 6):
        pair = stratified_resample(train, test, rid, 42)
        assert _counts(pair.train) == base_counts
        resampled_union = sorted(
            tuple(c.values.tolist()) + (c.label,)
            for c in pair.train.series + pair.test.series
        )
        assert resampled_union == union


def test_resample_deterministic():
    rng = np.random.default_rng(5)
    train = random_dataset(rng, 10, 4)
    test = random_dataset(rng, 6, 4)
    p1 = stratified_resample(train, test, 3, 7)
    p2 = stratified_resample(train, test, 3, 7)
    for a, b in zip(p1.train.series + p1.test.series, p2.train.series + p2.test.series):
        assert a.label == b.label
        assert np.array_equal(a.values, b.values)


def test_resample_incompatible():
    train = make_dataset([[1, 2]], ["a"], ("a", "b"))
    test = make_dataset([[1, 2]], ["c"], ("c",))
    with pytest.raises(IncompatibleDatasets):
        stratified_resample(train, test, 1, 0)
    test2 = make_dataset([[1, 2, 3]], ["a"], ("a", "b"))
    with pytest.raises(IncompatibleDatasets):
        stratified_resample(train, test2, 1, 0)
