"""Interpreted elastic distance kernels.

Fallback twin of ``_elastic_c``: same names, same arguments, same answers,
plain Python loops. Used when the compiled extension is unavailable and as
the reference side of the backend-equality tests; ``benchmarks/`` measures
the gap between the two.
"""

import math

import numpy as np

BACKEND_NAME = "pure"

_INF = math.inf


def sq_euclidean(a, b, cutoff=_INF):
    acc = 0.0
    for x, y in zip(a.tolist(), b.tolist()):
        d = x - y
        acc += d * d
        if acc >= cutoff:
            return _INF
    return acc


def dtw(a, b, band, cutoff=_INF):
    n = len(a)
    av = a.tolist()
    bv = b.tolist()
    prev = [_INF] * (n + 1)
    prev[0] = 0.0
    for i in range(1, n + 1):
        curr = [_INF] * (n + 1)
        lo = max(1, i - band)
        hi = min(n, i + band)
        ai = av[i - 1]
        row_min = _INF
        for j in range(lo, hi + 1):
            d = ai - bv[j - 1]
            m = prev[j]
            if prev[j - 1] < m:
                m = prev[j - 1]
            if curr[j - 1] < m:
                m = curr[j - 1]
            v = d * d + m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return _INF
        prev = curr
    return prev[n]


def wdtw(a, b, g, cutoff=_INF):
    n = len(a)
    av = a.tolist()
    bv = b.tolist()
    half = n / 2.0
    w = [1.0 / (1.0 + math.exp(-g * (k - half))) for k in range(n)]
    prev = [_INF] * (n + 1)
    prev[0] = 0.0
    for i in range(1, n + 1):
        curr = [_INF] * (n + 1)
        ai = av[i - 1]
        row_min = _INF
        for j in range(1, n + 1):
            d = ai - bv[j - 1]
            m = prev[j]
            if prev[j - 1] < m:
                m = prev[j - 1]
            if curr[j - 1] < m:
                m = curr[j - 1]
            v = w[abs(i - j)] * d * d + m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return _INF
        prev = curr
    return prev[n]


def lcss(a, b, epsilon, delta):
    n = len(a)
    av = a.tolist()
    bv = b.tolist()
    prev = [0] * (n + 1)
    for i in range(1, n + 1):
        curr = [0] * (n + 1)
        ai = av[i - 1]
        for j in range(1, n + 1):
            if abs(i - j) <= delta and abs(ai - bv[j - 1]) <= epsilon:
                curr[j] = prev[j - 1] + 1
            else:
                curr[j] = prev[j] if prev[j] > curr[j - 1] else curr[j - 1]
        prev = curr
    return 1.0 - prev[n] / n


def erp(a, b, g, band, cutoff=_INF):
    n = len(a)
    av = a.tolist()
    bv = b.tolist()
    prev = [_INF] * (n + 1)
    prev[0] = 0.0
    for j in range(1, min(band, n) + 1):
        db = bv[j - 1] - g
        prev[j] = prev[j - 1] + db * db
    for i in range(1, n + 1):
        curr = [_INF] * (n + 1)
        lo = max(1, i - band)
        hi = min(n, i + band)
        ai = av[i - 1]
        ga = (ai - g) * (ai - g)
        if i <= band:
            curr[0] = prev[0] + ga
        row_min = curr[0]
        for j in range(lo, hi + 1):
            bj = bv[j - 1]
            dm = ai - bj
            gb = (bj - g) * (bj - g)
            v = prev[j - 1] + dm * dm
            m = prev[j] + ga
            if m < v:
                v = m
            m = curr[j - 1] + gb
            if m < v:
                v = m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return _INF
        prev = curr
    return prev[n]


def _msm_cost(val, x, y, c):
    if x <= val <= y or y <= val <= x:
        return c
    return c + min(abs(val - x), abs(val - y))


def msm(a, b, c, cutoff=_INF):
    n = len(a)
    av = a.tolist()
    bv = b.tolist()
    prev = [_INF] * n
    prev[0] = abs(av[0] - bv[0])
    for j in range(1, n):
        prev[j] = prev[j - 1] + _msm_cost(bv[j], av[0], bv[j - 1], c)
    for i in range(1, n):
        curr = [_INF] * n
        curr[0] = prev[0] + _msm_cost(av[i], av[i - 1], bv[0], c)
        row_min = curr[0]
        for j in range(1, n):
            v = prev[j - 1] + abs(av[i] - bv[j])
            m = prev[j] + _msm_cost(av[i], av[i - 1], bv[j], c)
            if m < v:
                v = m
            m = curr[j - 1] + _msm_cost(bv[j], av[i], bv[j - 1], c)
            if m < v:
                v = m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return _INF
        prev = curr
    return prev[n - 1]


def twed(a, b, nu, lam, cutoff=_INF):
    n = len(a)
    av = a.tolist()
    bv = b.tolist()
    prev = [_INF] * (n + 1)
    prev[0] = 0.0
    bp = 0.0
    for j in range(1, n + 1):
        d1 = bv[j - 1] - bp
        prev[j] = prev[j - 1] + d1 * d1 + nu + lam
        bp = bv[j - 1]
    ap = 0.0
    for i in range(1, n + 1):
        ai = av[i - 1]
        curr = [_INF] * (n + 1)
        d1 = ai - ap
        curr[0] = prev[0] + d1 * d1 + nu + lam
        row_min = curr[0]
        for j in range(1, n + 1):
            bj = bv[j - 1]
            bp = bv[j - 2] if j >= 2 else 0.0
            d1 = ai - bj
            d2 = ap - bp
            v = prev[j - 1] + d1 * d1 + d2 * d2 + 2.0 * nu * abs(i - j)
            d1 = ai - ap
            m = prev[j] + d1 * d1 + nu + lam
            if m < v:
                v = m
            d1 = bj - bp
            m = curr[j - 1] + d1 * d1 + nu + lam
            if m < v:
                v = m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return _INF
        ap = ai
        prev = curr
    return prev[n]


def min_subsequence_dist(shapelet, series):
    m = len(shapelet)
    if len(series) < m:
        return _INF
    sv = np.asarray(series, dtype=np.float64)
    windows = np.lib.stride_tricks.sliding_window_view(sv, m)
    mu = windows.mean(axis=1, keepdims=True)
    sd = windows.std(axis=1, keepdims=True)
    safe = sd >= 1e-8
    z = np.where(safe, (windows - mu) / np.where(safe, sd, 1.0), 0.0)
    d = ((z - np.asarray(shapelet, dtype=np.float64)) ** 2).mean(axis=1)
    return float(d.min())
