import numpy as np

from tsckit.datasets import Case, TimeSeriesDataset
from tsckit.exceptions import LengthMismatch
from tsckit.registry import build_classifier


class NotFitted(Exception):
    """predict/predict_proba called before fit."""


class RaggedInput(Exception):
    """Nested input rows have differing lengths."""


def convert_dataset(X, y, class_labels=None, problem_name="memory"):
    """Convert nested sequences plus labels into the core dataset model.

    Labels are stringified; the class order is their first-appearance
    order in ``y`` unless ``class_labels`` is given explicitly.
    """
    rows = [np.asarray(row, dtype=np.float64) for row in X]
    if len(rows) != len(y):
        raise LengthMismatch(f"{len(rows)} series but {len(y)} labels")
    if not rows:
        raise LengthMismatch("cannot convert an empty dataset")
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise RaggedInput(f"series lengths differ: {sorted(lengths)}")
    labels = [str(label) for label in y]
    if class_labels is None:
        class_labels = tuple(dict.fromkeys(labels))
    cases = tuple(Case(row, label) for row, label in zip(rows, labels))
    return TimeSeriesDataset(problem_name, cases, tuple(class_labels), lengths.pop())


class BoundEstimator:
    """construct -> fit(X, y) -> predict / predict_proba over one named
    core classifier.

    Parameters mirror the CLI flags in snake_case (``n_trees``,
    ``max_candidates``, ``params={"w": 0.1}``, ...); identical name, seed
    and parameters reproduce the CLI's predictions case for case.
    """

    def __init__(self, classifier_name, seed=0, **config):
        self.classifier_name = classifier_name
        self.seed = seed
        self.config = dict(config)
        self._runner = build_classifier(classifier_name, seed=seed, options=self.config)
        self._model = None
        self._class_labels = None

    def fit(self, X, y):
        train = convert_dataset(X, y)
        self._model = self._runner.fit(train)
        self._class_labels = train.class_labels
        return self

    def _require_fitted(self):
        if self._model is None:
            raise NotFitted(f"{self.classifier_name} estimator is not fitted")

    @property
    def classes_(self):
        self._require_fitted()
        return self._class_labels

    def predict_proba(self, X):
        self._require_fitted()
        placeholder = [self._class_labels[0]] * len(X)
        test = convert_dataset(X, placeholder, class_labels=self._class_labels)
        return self._runner.predict_proba(self._model, test)

    def predict(self, X):
        proba = self.predict_proba(X)
        return np.array([self._class_labels[i] for i in proba.argmax(axis=1)])
