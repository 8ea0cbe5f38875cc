"""Benchmark comparison statistics: Wilcoxon signed-rank, Holm correction,
average ranks, significance cliques, win/draw/loss counts."""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import TooFewSamples
from .metrics import midranks

DRAW_TOLERANCE = 1e-10
EXACT_LIMIT = 25
MIN_NONZERO = 5


def win_draw_loss(a, b):
    """Counts of datasets where a beats, ties (within 1e-10), or loses to b."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if len(a) != len(b):
        raise ValueError("paired vectors must have equal length")
    diff = a - b
    draws = int((np.abs(diff) <= DRAW_TOLERANCE).sum())
    wins = int((diff > DRAW_TOLERANCE).sum())
    return wins, draws, len(a) - wins - draws


def wilcoxon_signed_rank(a, b):
    """Two-sided Wilcoxon signed-rank p-value for paired samples.

    Zero differences are dropped; absolute differences are midranked. The
    exact doubled-rank distribution is used for n <= 25, otherwise the
    normal approximation with continuity and tie corrections.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    diff = a - b
    diff = diff[diff != 0.0]
    n = len(diff)
    if n < MIN_NONZERO:
        raise TooFewSamples(f"need >= {MIN_NONZERO} non-zero differences, got {n}")
    ranks = midranks(np.abs(diff))
    w_plus = float(ranks[diff > 0].sum())

    if n <= EXACT_LIMIT:
        return _exact_p(ranks, w_plus)
    return _approx_p(diff, ranks, w_plus)


def _exact_p(ranks, w_plus):
    # doubled midranks are integers, so the distribution of 2*W+ is a
    # straightforward counting DP over sign assignments
    doubled = np.rint(2.0 * ranks).astype(np.int64)
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=np.float64)
    counts[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: total + 1 - r]
        counts = counts + shifted
    denom = 2.0 ** len(ranks)
    w2 = int(round(2.0 * w_plus))
    p_le = counts[: w2 + 1].sum() / denom
    p_ge = counts[w2:].sum() / denom
    return min(1.0, 2.0 * min(p_le, p_ge))


def _approx_p(diff, ranks, w_plus):
    n = len(diff)
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    _, tie_counts = np.unique(np.abs(diff), return_counts=True)
    var -= float((tie_counts**3 - tie_counts).sum()) / 48.0
    numer = w_plus - mean
    numer -= 0.5 * math.copysign(1.0, numer) if numer != 0 else 0.0
    z = numer / math.sqrt(var)
    return math.erfc(abs(z) / math.sqrt(2.0))


def holm_correct(p_values, alpha):
    """Step-down Holm rejections in the original hypothesis order."""
    p = np.asarray(p_values, dtype=np.float64)
    if len(p) == 0:
        raise ValueError("no p-values supplied")
    m = len(p)
    order = np.argsort(p, kind="mergesort")
    reject = np.zeros(m, dtype=bool)
    for step, idx in enumerate(order):
        if p[idx] <= alpha / (m - step):
            reject[idx] = True
        else:
            break
    return reject


def holm_adjusted(p_values):
    """Holm-adjusted p-values (monotone step-down), original order."""
    p = np.asarray(p_values, dtype=np.float64)
    m = len(p)
    order = np.argsort(p, kind="mergesort")
    adjusted = np.empty(m, dtype=np.float64)
    running = 0.0
    for step, idx in enumerate(order):
        running = max(running, min(1.0, (m - step) * p[idx]))
        adjusted[idx] = running
    return adjusted


@dataclass(frozen=True)
class ComparisonSummary:
    classifier_names: tuple
    dataset_names: tuple
    metric_matrix: np.ndarray  # (datasets, classifiers)
    average_ranks: np.ndarray
    pairwise_p: dict  # (i, j) -> raw p-value
    pairwise_adjusted: dict  # (i, j) -> Holm-adjusted p-value
    pairwise_reject: dict  # (i, j) -> bool
    cliques: tuple  # of tuples of classifier indices
    wdl: dict  # (i, j) -> (wins, draws, losses) of i over j


def average_ranks_and_cliques(
    metric_matrix, alpha, classifier_names=None, dataset_names=None, higher_is_better=True
):
    """Per-dataset midranks (1 = best) averaged per classifier, plus the
    maximal cliques of classifiers with no Holm-significant pairwise
    difference."""
    matrix = np.asarray(metric_matrix, dtype=np.float64)
    n_datasets, k = matrix.shape
    if k < 2:
        raise ValueError("need at least 2 classifiers")
    if n_datasets < 5:
        raise ValueError("need at least 5 datasets")
    if classifier_names is None:
        classifier_names = tuple(f"clf{i}" for i in range(k))
    if dataset_names is None:
        dataset_names = tuple(f"dataset{i}" for i in range(n_datasets))

    oriented = matrix if higher_is_better else -matrix
    ranks = np.vstack([midranks(-oriented[d]) for d in range(n_datasets)])
    average_ranks = ranks.mean(axis=0)

    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    raw = {}
    for i, j in pairs:
        try:
            raw[(i, j)] = wilcoxon_signed_rank(matrix[:, i], matrix[:, j])
        except TooFewSamples:
            raw[(i, j)] = 1.0  # indistinguishable
    p_list = [raw[p] for p in pairs]
    reject_list = holm_correct(p_list, alpha)
    adjusted_list = holm_adjusted(p_list)
    reject = {pair: bool(r) for pair, r in zip(pairs, reject_list)}
    adjusted = {pair: float(v) for pair, v in zip(pairs, adjusted_list)}

    cliques = _maximal_cliques(k, {pair for pair, r in reject.items() if not r})
    wdl = {
        (i, j): win_draw_loss(matrix[:, i], matrix[:, j]) for i, j in pairs
    }
    return ComparisonSummary(
        tuple(classifier_names),
        tuple(dataset_names),
        matrix,
        average_ranks,
        raw,
        adjusted,
        reject,
        tuple(cliques),
        wdl,
    )


def _maximal_cliques(k, edges):
    """Bron-Kerbosch over the non-significance graph; deterministic order."""
    adjacency = {i: set() for i in range(k)}
    for i, j in edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    cliques = []

    def expand(current, candidates, excluded):
        if not candidates and not excluded:
            cliques.append(tuple(sorted(current)))
            return
        for v in sorted(candidates):
            expand(
                current | {v},
                candidates & adjacency[v],
                excluded & adjacency[v],
            )
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand(set(), set(range(k)), set())
    return sorted(cliques)
