"""Windowed SFA words, BOSS histograms/distance, and the BOSS/cBOSS ensembles."""

import time
from dataclasses import dataclass

import numpy as np

from .exceptions import LengthMismatch, NoViableParameters, UnfittedBreakpoints, WindowTooLong

WORD_LENGTHS = (16, 14, 12, 10, 8)
ALPHABET_SIZE = 4
MIN_WINDOW = 10
RETENTION_THRESHOLD = 0.92


@dataclass(frozen=True)
class SfaParams:
    window_length: int
    word_length: int
    alphabet_size: int = ALPHABET_SIZE
    normalize: bool = True

    def __post_init__(self):
        if self.window_length < 2:
            raise ValueError("window_length must be >= 2")
        if not 0 < self.word_length <= self.window_length:
            raise ValueError("word_length must be in [1, window_length]")
        if self.word_length > available_coefficients(self.window_length, self.normalize):
            raise ValueError("word_length exceeds available Fourier coefficients")
        if self.alphabet_size < 2:
            raise ValueError("alphabet_size must be >= 2")


@dataclass(frozen=True)
class BossEnsembleConfig:
    randomised_ensemble: bool = False
    n_parameter_samples: int = 250
    max_ensemble_size: int = 50
    time_limit_minutes: float = None
    retention_threshold: float = RETENTION_THRESHOLD
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.retention_threshold <= 1.0:
            raise ValueError("retention_threshold must be in (0, 1]")


@dataclass(frozen=True)
class BossIndividualModel:
    params: SfaParams
    breakpoints: np.ndarray  # (word_length, alphabet_size - 1)
    train_histograms: tuple  # of {word code: count}
    train_label_indices: np.ndarray
    train_accuracy: float
    vocabulary: np.ndarray  # sorted word codes appearing in training
    count_matrix: np.ndarray  # (n_cases, len(vocabulary)) float counts


@dataclass(frozen=True)
class BossEnsembleModel:
    members: tuple
    weights: tuple
    class_labels: tuple


def available_coefficients(window_length, normalize):
    """Interleaved real/imaginary DFT values usable as word positions."""
    total = 2 * (window_length // 2 + 1)
    return total - 2 if normalize else total


def _window_coefficients(series, params):
    """(n_windows, word_length) matrix of truncated Fourier coefficients."""
    w = params.window_length
    if w > len(series):
        raise WindowTooLong(f"window {w} exceeds series length {len(series)}")
    windows = np.lib.stride_tricks.sliding_window_view(
        np.asarray(series, dtype=np.float64), w
    )
    if params.normalize:
        mu = windows.mean(axis=1, keepdims=True)
        sd = windows.std(axis=1, keepdims=True)
        ok = sd >= 1e-8
        windows = np.where(ok, (windows - mu) / np.where(ok, sd, 1.0), 0.0)
    spectrum = np.fft.rfft(windows, axis=1)
    coeffs = np.empty((windows.shape[0], 2 * spectrum.shape[1]))
    coeffs[:, 0::2] = spectrum.real
    coeffs[:, 1::2] = spectrum.imag
    if params.normalize:
        coeffs = coeffs[:, 2:]  # drop the DC pair
    return coeffs[:, : params.word_length]


def fit_breakpoints(train, params):
    """Multiple coefficient binning: per-coefficient equi-depth thresholds
    pooled over every training window."""
    pooled = np.vstack([_window_coefficients(c.values, params) for c in train.series])
    qs = np.arange(1, params.alphabet_size) / params.alphabet_size
    return np.quantile(pooled, qs, axis=0).T  # (word_length, alphabet-1)


def _pack_words(coeffs, breakpoints, alphabet_size):
    word_length = coeffs.shape[1]
    powers = alphabet_size ** np.arange(word_length - 1, -1, -1, dtype=np.int64)
    codes = np.zeros(coeffs.shape[0], dtype=np.int64)
    for k in range(word_length):
        symbols = np.searchsorted(breakpoints[k], coeffs[:, k], side="left")
        codes += symbols.astype(np.int64) * powers[k]
    return codes


def sfa_word(window, params, breakpoints):
    """Discretize a single window into one packed word code."""
    if breakpoints is None:
        raise UnfittedBreakpoints("breakpoints must be fitted first")
    window = np.asarray(window, dtype=np.float64)
    if len(window) != params.window_length:
        raise WindowTooLong("window length does not match params")
    coeffs = _window_coefficients(window, params)
    return int(_pack_words(coeffs, breakpoints, params.alphabet_size)[0])


def series_to_histogram(series, params, breakpoints):
    """Sliding-window word counts after numerosity reduction."""
    if breakpoints is None:
        raise UnfittedBreakpoints("breakpoints must be fitted first")
    coeffs = _window_coefficients(series, params)
    codes = _pack_words(coeffs, breakpoints, params.alphabet_size)
    keep = np.ones(len(codes), dtype=bool)
    keep[1:] = codes[1:] != codes[:-1]
    words, counts = np.unique(codes[keep], return_counts=True)
    return {int(w): int(c) for w, c in zip(words, counts)}


def boss_distance(a, b):
    """Squared histogram difference summed over the first histogram's words."""
    return float(sum((count - b.get(word, 0)) ** 2 for word, count in a.items()))


def _distances_to_train(histogram, model):
    """Vector of boss distances from one query histogram to all train cases."""
    words = np.fromiter(histogram.keys(), dtype=np.int64, count=len(histogram))
    counts = np.fromiter(histogram.values(), dtype=np.float64, count=len(histogram))
    pos = np.searchsorted(model.vocabulary, words)
    pos_clipped = np.minimum(pos, len(model.vocabulary) - 1)
    known = model.vocabulary[pos_clipped] == words
    d = np.full(model.count_matrix.shape[0], float(np.dot(counts[~known], counts[~known])))
    if known.any():
        diffs = counts[known][None, :] - model.count_matrix[:, pos_clipped[known]]
        d += (diffs * diffs).sum(axis=1)
    return d


def boss_individual_fit(train, params):
    """Fit breakpoints and histograms; score by leave-one-out 1NN."""
    breakpoints = fit_breakpoints(train, params)
    histograms = tuple(
        series_to_histogram(c.values, params, breakpoints) for c in train.series
    )
    vocabulary = np.array(
        sorted(set().union(*(h.keys() for h in histograms))), dtype=np.int64
    )
    matrix = np.zeros((len(histograms), len(vocabulary)))
    for i, h in enumerate(histograms):
        cols = np.searchsorted(vocabulary, np.fromiter(h.keys(), dtype=np.int64))
        matrix[i, cols] = np.fromiter(h.values(), dtype=np.float64)
    labels = train.label_indices
    correct = 0
    for i in range(len(histograms)):
        support = matrix[i] > 0
        diffs = matrix[i, support][None, :] - matrix[:, support]
        d = (diffs * diffs).sum(axis=1)
        d[i] = np.inf
        if labels[int(np.argmin(d))] == labels[i]:
            correct += 1
    accuracy = correct / len(histograms)
    matrix.flags.writeable = False
    vocabulary.flags.writeable = False
    return BossIndividualModel(
        params, breakpoints, histograms, labels, accuracy, vocabulary, matrix
    )


def retain_by_accuracy(accuracies, threshold=RETENTION_THRESHOLD):
    """Grid-mode retention: keep members within threshold x best accuracy."""
    best = max(accuracies)
    return [acc >= threshold * best for acc in accuracies]


def parameter_space(series_length):
    """Canonical (window, word, normalize) combinations for an ensemble search."""
    if series_length < MIN_WINDOW:
        raise NoViableParameters(
            f"series length {series_length} is below the minimum window {MIN_WINDOW}"
        )
    windows = np.unique(
        np.round(np.linspace(MIN_WINDOW, series_length, 10)).astype(int)
    )
    combos = []
    for w in windows:
        for wl in WORD_LENGTHS:
            for norm in (True, False):
                if wl <= min(w, available_coefficients(int(w), norm)):
                    combos.append(SfaParams(int(w), wl, ALPHABET_SIZE, norm))
    if not combos:
        raise NoViableParameters("no feasible SFA parameter combinations")
    return combos


def boss_ensemble_fit(train, config):
    """Grid-search BOSS or randomized/contracted cBOSS ensemble."""
    combos = parameter_space(train.series_length)
    if not config.randomised_ensemble:
        members = [boss_individual_fit(train, p) for p in combos]
        keep = retain_by_accuracy(
            [m.train_accuracy for m in members], config.retention_threshold
        )
        retained = tuple(m for m, k in zip(members, keep) if k)
        weights = tuple(1.0 for _ in retained)
        return BossEnsembleModel(retained, weights, train.class_labels)

    rng = np.random.default_rng(config.seed)
    order = rng.permutation(len(combos))
    members = []
    if config.time_limit_minutes is not None:
        deadline = time.monotonic() + config.time_limit_minutes * 60.0
        for idx in order:
            if time.monotonic() >= deadline:
                break
            members.append(boss_individual_fit(train, combos[idx]))
    else:
        for idx in order[: config.n_parameter_samples]:
            members.append(boss_individual_fit(train, combos[idx]))
    ranked = sorted(
        range(len(members)), key=lambda t: (-members[t].train_accuracy, t)
    )[: config.max_ensemble_size]
    retained = tuple(members[t] for t in sorted(ranked))
    weights = tuple(m.train_accuracy**4 for m in retained)
    return BossEnsembleModel(retained, weights, train.class_labels)


def _member_nn_label(member, series):
    histogram = series_to_histogram(series, member.params, member.breakpoints)
    d = _distances_to_train(histogram, member)
    return int(member.train_label_indices[int(np.argmin(d))])


def boss_predict_proba(model, test):
    """Accuracy-weighted 1NN votes of every member, normalized per case."""
    if not model.members:
        raise NoViableParameters("ensemble has no members")
    width = max(m.params.window_length for m in model.members)
    if test.series_length < width:
        raise LengthMismatch("test series shorter than the widest member window")
    n_classes = len(model.class_labels)
    out = np.zeros((test.n_cases, n_classes))
    for row, case in enumerate(test.series):
        for member, weight in zip(model.members, model.weights):
            out[row, _member_nn_label(member, case.values)] += weight
        total = out[row].sum()
        out[row] = out[row] / total if total > 0 else np.full(n_classes, 1.0 / n_classes)
    return out
