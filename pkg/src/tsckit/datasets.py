""".ts dataset files, the in-memory dataset model, and stratified resampling."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import (
    IncompatibleDatasets,
    LengthMismatch,
    MalformedHeader,
    MultivariateUnsupported,
    NonNumericValue,
    UnknownLabel,
)


@dataclass(frozen=True)
class Case:
    """A single labeled series; values are finite float64, read-only."""

    values: np.ndarray
    label: str

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise NonNumericValue("case values must be a 1-d sequence")
        if not np.all(np.isfinite(values)):
            raise NonNumericValue("case values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class TimeSeriesDataset:
    """Equal-length univariate classification dataset.

    ``class_labels`` fixes the class order used for every probability
    vector produced downstream.
    """

    problem_name: str
    series: tuple
    class_labels: tuple
    series_length: int

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        object.__setattr__(self, "class_labels", tuple(self.class_labels))
        if not self.class_labels:
            raise MalformedHeader("class_labels must be non-empty")
        if len(set(self.class_labels)) != len(self.class_labels):
            raise MalformedHeader("class_labels must be distinct")
        if self.series_length <= 0:
            raise LengthMismatch("series_length must be positive")
        known = set(self.class_labels)
        for case in self.series:
            if len(case.values) != self.series_length:
                raise LengthMismatch(
                    f"case has length {len(case.values)}, expected {self.series_length}"
                )
            if case.label not in known:
                raise UnknownLabel(f"label {case.label!r} not declared")

    @property
    def n_cases(self):
        return len(self.series)

    @cached_property
    def value_matrix(self):
        """(n_cases, series_length) float64 matrix of all series."""
        if not self.series:
            return np.empty((0, self.series_length))
        m = np.vstack([c.values for c in self.series])
        m.flags.writeable = False
        return m

    @cached_property
    def label_indices(self):
        """Per-case class index following class_labels order."""
        lookup = {lab: i for i, lab in enumerate(self.class_labels)}
        idx = np.array([lookup[c.label] for c in self.series], dtype=np.intp)
        idx.flags.writeable = False
        return idx

    def class_index(self, label):
        return self.class_labels.index(label)


@dataclass(frozen=True)
class ResamplePair:
    train: TimeSeriesDataset
    test: TimeSeriesDataset
    resample_id: int
    seed: int


_REQUIRED_TOKENS = {"problemname", "univariate", "equallength", "serieslength", "classlabel"}


def parse_ts_file(text):
    """Parse the contents of a ``.ts`` file into a TimeSeriesDataset.

    Header directives are matched case-insensitively; unrecognized
    directives and ``#`` comment lines are ignored. Multivariate data
    (more than one ``:`` separator per line) is rejected.
    """
    problem_name = ""
    series_length = None
    class_labels = None
    in_data = False
    cases = []

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not in_data and line.startswith("@"):
            parts = line.split()
            directive = parts[0][1:].lower()
            if directive == "data":
                in_data = True
            elif directive == "problemname":
                problem_name = parts[1] if len(parts) > 1 else ""
            elif directive == "serieslength":
                try:
                    series_length = int(parts[1])
                except (IndexError, ValueError):
                    raise MalformedHeader(f"bad @seriesLength line: {line!r}")
            elif directive == "classlabel":
                if len(parts) < 2 or parts[1].lower() != "true" or len(parts) < 3:
                    raise MalformedHeader("@classLabel must be 'true' with labels")
                class_labels = tuple(parts[2:])
            elif directive == "univariate":
                if len(parts) > 1 and parts[1].lower() == "false":
                    raise MultivariateUnsupported("only univariate data is supported")
            elif directive == "equallength":
                if len(parts) > 1 and parts[1].lower() == "false":
                    raise MalformedHeader("unequal-length series are unsupported")
            # anything else (@timeStamps, @missing, ...): ignored
            continue
        if not in_data:
            raise MalformedHeader(f"unexpected line before @data: {line!r}")
        if line.count(":") == 0:
            raise MalformedHeader(f"data line has no label separator: {line!r}")
        if line.count(":") > 1:
            raise MultivariateUnsupported("multi-channel data lines are unsupported")
        value_text, label = line.rsplit(":", 1)
        label = label.strip()
        if class_labels is None:
            raise MalformedHeader("missing @classLabel before @data")
        if label not in class_labels:
            raise UnknownLabel(f"label {label!r} not in declared set")
        try:
            values = np.array([float(v) for v in value_text.split(",")], dtype=np.float64)
        except ValueError:
            raise NonNumericValue(f"non-numeric value in line: {line!r}")
        if not np.all(np.isfinite(values)):
            raise NonNumericValue("NaN/inf values are not permitted")
        if series_length is None:
            series_length = len(values)
        if len(values) != series_length:
            raise LengthMismatch(
                f"case of length {len(values)} under seriesLength {series_length}"
            )
        cases.append(Case(values, label))

    if not in_data:
        raise MalformedHeader("missing @data directive")
    if class_labels is None:
        raise MalformedHeader("missing @classLabel directive")
    if series_length is None:
        raise MalformedHeader("empty data section and no @seriesLength")
    return TimeSeriesDataset(problem_name, tuple(cases), class_labels, series_length)


def serialize_ts_file(dataset):
    """Inverse of parse_ts_file; round-trips values exactly via repr."""
    lines = [
        f"@problemName {dataset.problem_name}",
        "@univariate true",
        "@equalLength true",
        f"@seriesLength {dataset.series_length}",
        "@classLabel true " + " ".join(dataset.class_labels),
        "@data",
    ]
    for case in dataset.series:
        lines.append(",".join(repr(float(v)) for v in case.values) + ":" + case.label)
    return "\n".join(lines) + "\n"


def stratified_resample(original_train, original_test, resample_id, seed):
    """Deterministic stratified reshuffle of the train/test split.

    Resample 0 is the original split. Otherwise cases are pooled per
    class, shuffled by a PRNG derived from (seed, resample_id), and
    re-split preserving the original per-class train counts.
    """
    if original_train.class_labels != original_test.class_labels:
        raise IncompatibleDatasets("train/test class label sets differ")
    if original_train.series_length != original_test.series_length:
        raise IncompatibleDatasets("train/test series lengths differ")
    if resample_id < 0:
        raise ValueError("resample_id must be non-negative")
    if resample_id == 0:
        return ResamplePair(original_train, original_test, 0, seed)

    rng = np.random.default_rng((int(seed) ^ int(resample_id)) & 0xFFFFFFFFFFFFFFFF)
    new_train = []
    new_test = []
    for label in original_train.class_labels:
        pool = [c for c in original_train.series if c.label == label]
        n_train = len(pool)
        pool += [c for c in original_test.series if c.label == label]
        order = rng.permutation(len(pool))
        new_train.extend(pool[i] for i in order[:n_train])
        new_test.extend(pool[i] for i in order[n_train:])

    make = lambda cases: TimeSeriesDataset(  # noqa: E731
        original_train.problem_name,
        tuple(cases),
        original_train.class_labels,
        original_train.series_length,
    )
    return ResamplePair(make(new_train), make(new_test), resample_id, seed)
