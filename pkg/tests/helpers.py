"""Shared construction helpers for the test suite."""

import numpy as np

from tsckit.datasets import Case, TimeSeriesDataset


def make_dataset(values, labels, class_labels=None, name="toy"):
    values = np.asarray(values, dtype=np.float64)
    labels = [str(l) for l in labels]
    if class_labels is None:
        class_labels = tuple(dict.fromkeys(labels))
    cases = tuple(Case(v, l) for v, l in zip(values, labels))
    return TimeSeriesDataset(name, cases, tuple(class_labels), values.shape[1])


def random_dataset(rng, n_cases, length, n_classes=2, name="rand"):
    values = rng.normal(size=(n_cases, length))
    labels = [str(rng.integers(0, n_classes)) for _ in range(n_cases)]
    # make sure every class is present
    for c in range(n_classes):
        labels[c % n_cases] = str(c)
    return make_dataset(values, labels, tuple(str(c) for c in range(n_classes)), name)
