"""The results interchange file: one classifier run on one resample."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import EmptyResults


@dataclass(frozen=True)
class ClassifierResults:
    problem_name: str
    classifier_name: str
    resample_id: int
    parameter_text: str
    true_class_indices: np.ndarray
    predicted_class_indices: np.ndarray
    probabilities: np.ndarray  # (n_cases, n_classes)
    build_time_ns: int
    test_time_ns: int

    def __post_init__(self):
        true = np.asarray(self.true_class_indices, dtype=np.intp)
        pred = np.asarray(self.predicted_class_indices, dtype=np.intp)
        proba = np.asarray(self.probabilities, dtype=np.float64)
        if len(true) == 0:
            raise EmptyResults("results must contain at least one prediction")
        if proba.ndim != 2 or proba.shape[0] != len(true) or len(pred) != len(true):
            raise EmptyResults("prediction arrays have inconsistent shapes")
        if not np.allclose(proba.sum(axis=1), 1.0, atol=1e-6):
            raise ValueError("probability vectors must sum to 1")
        if not np.array_equal(pred, proba.argmax(axis=1)):
            raise ValueError("predicted indices must be the argmax of probabilities")
        for name, arr in (("true", true), ("pred", pred), ("proba", proba)):
            arr.flags.writeable = False
            object.__setattr__(
                self,
                {"true": "true_class_indices", "pred": "predicted_class_indices",
                 "proba": "probabilities"}[name],
                arr,
            )

    @classmethod
    def from_probabilities(cls, problem_name, classifier_name, resample_id,
                           parameter_text, true_class_indices, probabilities,
                           build_time_ns, test_time_ns):
        proba = np.asarray(probabilities, dtype=np.float64)
        return cls(
            problem_name,
            classifier_name,
            resample_id,
            parameter_text,
            true_class_indices,
            proba.argmax(axis=1),
            proba,
            build_time_ns,
            test_time_ns,
        )

    @property
    def accuracy(self):
        return float(
            (self.true_class_indices == self.predicted_class_indices).mean()
        )

    def to_text(self):
        lines = [
            f"{self.problem_name},{self.classifier_name},test,{self.resample_id}",
            self.parameter_text.replace("\n", " "),
            f"{self.accuracy},{self.build_time_ns},{self.test_time_ns}",
        ]
        for t, p, probs in zip(
            self.true_class_indices, self.predicted_class_indices, self.probabilities
        ):
            lines.append(f"{t},{p},," + ",".join(f"{v:.6f}" for v in probs))
        return "\n".join(lines) + "\n"

    def write(self, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(), encoding="utf-8", newline="\n")
        return path


def results_from_text(text):
    lines = text.rstrip("\n").split("\n")
    if len(lines) < 4:
        raise EmptyResults("results file has no prediction lines")
    problem, classifier, _, resample_id = lines[0].split(",")
    parameter_text = lines[1]
    _, build_ns, test_ns = lines[2].split(",")
    true = []
    pred = []
    probs = []
    for line in lines[3:]:
        fields = line.split(",")
        true.append(int(fields[0]))
        pred.append(int(fields[1]))
        if fields[2] != "":
            raise ValueError("malformed prediction line: expected empty third field")
        probs.append([float(v) for v in fields[3:]])
    return ClassifierResults(
        problem,
        classifier,
        int(resample_id),
        parameter_text,
        np.array(true, dtype=np.intp),
        np.array(pred, dtype=np.intp),
        np.array(probs, dtype=np.float64),
        int(build_ns),
        int(test_ns),
    )


def read_results(path):
    return results_from_text(Path(path).read_text(encoding="utf-8"))


def results_path(out_dir, classifier_name, problem_name, resample_id):
    """Canonical location of a results file below an output directory."""
    return Path(out_dir) / classifier_name / problem_name / f"testResample{resample_id}.csv"
