"""Constructed separable problems used by the desk-scale benchmark suite.

Three problem families, each solvable essentially perfectly by the
classifier families whose inductive bias matches it: a level-shift
problem, a spectral (period) problem, and a planted-pattern problem.
A GunPoint-shaped stand-in mirrors the public archive file layout for
harness tests without shipping archive data.
"""

import numpy as np

from .datasets import Case, TimeSeriesDataset, serialize_ts_file


def _dataset(name, values, labels, class_labels):
    cases = tuple(Case(v, lab) for v, lab in zip(values, labels))
    return TimeSeriesDataset(name, cases, tuple(class_labels), values.shape[1])


def _split(name, values, labels, class_labels, n_train):
    train = _dataset(name, values[:n_train], labels[:n_train], class_labels)
    test = _dataset(name, values[n_train:], labels[n_train:], class_labels)
    return train, test


def _interleave(rng, per_class_blocks):
    """Stack per-class blocks and shuffle rows, keeping labels aligned."""
    values = np.vstack([b for b, _ in per_class_blocks])
    labels = np.concatenate([[lab] * len(b) for b, lab in per_class_blocks])
    order = rng.permutation(len(values))
    return values[order], labels[order]


def constant_level_problem(n_per_class=20, length=60, gap=2.0, noise=0.25, seed=0):
    """Two classes separated by a constant level shift. 40/40 split with
    the defaults (20 per class in each of train and test)."""
    rng = np.random.default_rng((seed, 101))
    blocks = []
    for split in range(2):
        a = rng.normal(0.0, noise, size=(n_per_class, length))
        b = rng.normal(gap, noise, size=(n_per_class, length))
        blocks.append(_interleave(rng, [(a, "low"), (b, "high")]))
    values = np.vstack([blocks[0][0], blocks[1][0]])
    labels = np.concatenate([blocks[0][1], blocks[1][1]])
    return _split("ConstantLevel", values, labels, ("low", "high"), 2 * n_per_class)


def spectral_problem(n_per_class=20, length=128, periods=(8, 32), noise=0.2, seed=0):
    """Two classes of sinusoids with different periods and random phases."""
    rng = np.random.default_rng((seed, 202))
    t = np.arange(length)
    blocks = []
    for split in range(2):
        per_class = []
        for period, lab in zip(periods, ("fast", "slow")):
            phases = rng.uniform(0.0, 2.0 * np.pi, size=n_per_class)
            xs = np.sin(2.0 * np.pi * t[None, :] / period + phases[:, None])
            xs = xs + rng.normal(0.0, noise, size=xs.shape)
            per_class.append((xs, lab))
        blocks.append(_interleave(rng, per_class))
    values = np.vstack([blocks[0][0], blocks[1][0]])
    labels = np.concatenate([blocks[0][1], blocks[1][1]])
    return _split("Spectral", values, labels, ("fast", "slow"), 2 * n_per_class)


PLANTED_PATTERN = np.array([0.0, 2.0, 4.0, 2.0, 0.0, -2.0, -4.0, -2.0, 0.0])


def planted_shapelet_problem(n_per_class=20, length=60, noise=0.4, seed=0):
    """Class "marked" carries a high-amplitude wave packet at a random
    offset; class "plain" is pure noise."""
    rng = np.random.default_rng((seed, 303))
    pattern = PLANTED_PATTERN
    blocks = []
    for split in range(2):
        plain = rng.normal(0.0, noise, size=(n_per_class, length))
        marked = rng.normal(0.0, noise, size=(n_per_class, length))
        offsets = rng.integers(0, length - len(pattern) + 1, size=n_per_class)
        for row, off in enumerate(offsets):
            marked[row, off : off + len(pattern)] += pattern
        blocks.append(_interleave(rng, [(plain, "plain"), (marked, "marked")]))
    values = np.vstack([blocks[0][0], blocks[1][0]])
    labels = np.concatenate([blocks[0][1], blocks[1][1]])
    return _split("PlantedShapelet", values, labels, ("plain", "marked"), 2 * n_per_class)


def gunpoint_standin(seed=0):
    """GunPoint-shaped synthetic problem: 50 train / 150 test cases of
    length 150, class labels "1" and "2"."""
    rng = np.random.default_rng((seed, 404))
    length = 150
    t = np.arange(length, dtype=np.float64)

    def bump(center):
        return np.exp(-0.5 * ((t - center) / 12.0) ** 2)

    def block(n, center, jitter_rows):
        centers = center + jitter_rows
        xs = np.vstack([bump(c) for c in centers])
        return xs + rng.normal(0.0, 0.05, size=xs.shape)

    def half(n_per_class):
        c1 = block(n_per_class, 45.0, rng.uniform(-6, 6, n_per_class))
        c2 = block(n_per_class, 100.0, rng.uniform(-6, 6, n_per_class))
        return _interleave(rng, [(c1, "1"), (c2, "2")])

    train_values, train_labels = half(25)
    test_values, test_labels = half(75)
    values = np.vstack([train_values, test_values])
    labels = np.concatenate([train_labels, test_labels])
    return _split("GunPoint", values, labels, ("1", "2"), 50)


def write_problem(data_dir, train, test):
    """Write <data_dir>/<problem>/<problem>_TRAIN.ts and _TEST.ts."""
    from pathlib import Path

    name = train.problem_name
    problem_dir = Path(data_dir) / name
    problem_dir.mkdir(parents=True, exist_ok=True)
    (problem_dir / f"{name}_TRAIN.ts").write_text(serialize_ts_file(train))
    (problem_dir / f"{name}_TEST.ts").write_text(serialize_ts_file(test))
    return problem_dir
