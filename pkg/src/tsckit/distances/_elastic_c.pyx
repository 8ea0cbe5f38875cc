# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled elastic distance kernels.

Every kernel mirrors a function of the same name in ``_elastic_py``; the
dispatching module picks whichever is importable. All DP kernels accept a
``cutoff`` for early abandoning inside 1NN search: once the running row
minimum can no longer drop below ``cutoff`` the kernel returns +inf. Any
return value >= cutoff therefore only promises "not better than cutoff".
"""

from libc.math cimport exp, fabs, sqrt, INFINITY

import numpy as np


BACKEND_NAME = "compiled"


def sq_euclidean(const double[::1] a, const double[::1] b, double cutoff=INFINITY):
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double acc = 0.0, d
    for i in range(n):
        d = a[i] - b[i]
        acc += d * d
        if acc >= cutoff:
            return INFINITY
    return acc


def dtw(const double[::1] a, const double[::1] b, Py_ssize_t band, double cutoff=INFINITY):
    """Sakoe-Chiba banded DTW over squared pointwise cost.

    ``band`` is the half-width in cells; 0 admits only the main diagonal.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, lo, hi
    cdef double ai, d, m, v, row_min
    buf = np.full(2 * (n + 1), np.inf)
    cdef double[::1] prev = buf[: n + 1]
    cdef double[::1] curr = buf[n + 1 :]
    cdef double[::1] tmp
    prev[0] = 0.0
    for i in range(1, n + 1):
        lo = i - band
        if lo < 1:
            lo = 1
        hi = i + band
        if hi > n:
            hi = n
        for j in range(n + 1):
            curr[j] = INFINITY
        ai = a[i - 1]
        row_min = INFINITY
        for j in range(lo, hi + 1):
            d = ai - b[j - 1]
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
            return INFINITY
        tmp = prev
        prev = curr
        curr = tmp
    return prev[n]


def wdtw(const double[::1] a, const double[::1] b, double g, double cutoff=INFINITY):
    """Full-window DTW with sigmoid distance weighting on |i-j|."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double ai, d, m, v, row_min, half = n / 2.0
    weights = np.empty(n, dtype=np.float64)
    cdef double[::1] w = weights
    for k in range(n):
        w[k] = 1.0 / (1.0 + exp(-g * (k - half)))
    buf = np.full(2 * (n + 1), np.inf)
    cdef double[::1] prev = buf[: n + 1]
    cdef double[::1] curr = buf[n + 1 :]
    cdef double[::1] tmp
    prev[0] = 0.0
    for i in range(1, n + 1):
        for j in range(n + 1):
            curr[j] = INFINITY
        ai = a[i - 1]
        row_min = INFINITY
        for j in range(1, n + 1):
            d = ai - b[j - 1]
            k = i - j if i >= j else j - i
            m = prev[j]
            if prev[j - 1] < m:
                m = prev[j - 1]
            if curr[j - 1] < m:
                m = curr[j - 1]
            v = w[k] * d * d + m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return INFINITY
        tmp = prev
        prev = curr
        curr = tmp
    return prev[n]


def lcss(const double[::1] a, const double[::1] b, double epsilon, Py_ssize_t delta):
    """1 - LCS/n where elements match iff |a_i-b_j| <= epsilon, |i-j| <= delta."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, best
    buf = np.zeros(2 * (n + 1), dtype=np.intp)
    cdef Py_ssize_t[::1] prev = buf[: n + 1]
    cdef Py_ssize_t[::1] curr = buf[n + 1 :]
    cdef Py_ssize_t[::1] tmp
    cdef double ai
    for i in range(1, n + 1):
        ai = a[i - 1]
        curr[0] = 0
        for j in range(1, n + 1):
            if (i - j <= delta and j - i <= delta) and fabs(ai - b[j - 1]) <= epsilon:
                curr[j] = prev[j - 1] + 1
            else:
                best = prev[j]
                if curr[j - 1] > best:
                    best = curr[j - 1]
                curr[j] = best
        tmp = prev
        prev = curr
        curr = tmp
    return 1.0 - (<double> prev[n]) / (<double> n)


def erp(const double[::1] a, const double[::1] b, double g, Py_ssize_t band, double cutoff=INFINITY):
    """Banded edit distance with real penalty; gap cost against constant g."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, lo, hi
    cdef double ai, m, v, row_min, dm, da, db
    buf = np.full(2 * (n + 1), np.inf)
    cdef double[::1] prev = buf[: n + 1]
    cdef double[::1] curr = buf[n + 1 :]
    cdef double[::1] tmp
    prev[0] = 0.0
    for j in range(1, n + 1):
        if j > band:
            break
        db = b[j - 1] - g
        prev[j] = prev[j - 1] + db * db
    for i in range(1, n + 1):
        lo = i - band
        if lo < 1:
            lo = 1
        hi = i + band
        if hi > n:
            hi = n
        for j in range(n + 1):
            curr[j] = INFINITY
        ai = a[i - 1]
        da = ai - g
        if i <= band:
            curr[0] = prev[0] + da * da
        row_min = curr[0]
        for j in range(lo, hi + 1):
            dm = ai - b[j - 1]
            db = b[j - 1] - g
            v = prev[j - 1] + dm * dm
            m = prev[j] + da * da
            if m < v:
                v = m
            m = curr[j - 1] + db * db
            if m < v:
                v = m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return INFINITY
        tmp = prev
        prev = curr
        curr = tmp
    return prev[n]


cdef inline double _msm_cost(double val, double x, double y, double c) nogil:
    cdef double dx, dy
    if (x <= val and val <= y) or (y <= val and val <= x):
        return c
    dx = fabs(val - x)
    dy = fabs(val - y)
    return c + (dx if dx < dy else dy)


def msm(const double[::1] a, const double[::1] b, double c, double cutoff=INFINITY):
    """Move-split-merge distance; absolute-difference move cost."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j
    cdef double v, m, row_min
    buf = np.full(2 * n, np.inf)
    cdef double[::1] prev = buf[:n]
    cdef double[::1] curr = buf[n:]
    cdef double[::1] tmp
    prev[0] = fabs(a[0] - b[0])
    for j in range(1, n):
        prev[j] = prev[j - 1] + _msm_cost(b[j], a[0], b[j - 1], c)
    for i in range(1, n):
        curr[0] = prev[0] + _msm_cost(a[i], a[i - 1], b[0], c)
        row_min = curr[0]
        for j in range(1, n):
            v = prev[j - 1] + fabs(a[i] - b[j])
            m = prev[j] + _msm_cost(a[i], a[i - 1], b[j], c)
            if m < v:
                v = m
            m = curr[j - 1] + _msm_cost(b[j], a[i], b[j - 1], c)
            if m < v:
                v = m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return INFINITY
        tmp = prev
        prev = curr
        curr = tmp
    return prev[n - 1]


def twed(const double[::1] a, const double[::1] b, double nu, double lam, double cutoff=INFINITY):
    """Time warp edit distance, squared local cost, timestamps 1..n, zero padding."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j
    cdef double v, m, row_min, d1, d2, ap, bp, ai, aprev
    buf = np.full(2 * (n + 1), np.inf)
    cdef double[::1] prev = buf[: n + 1]
    cdef double[::1] curr = buf[n + 1 :]
    cdef double[::1] tmp
    prev[0] = 0.0
    bp = 0.0
    for j in range(1, n + 1):
        d1 = b[j - 1] - bp
        prev[j] = prev[j - 1] + d1 * d1 + nu + lam
        bp = b[j - 1]
    ap = 0.0
    for i in range(1, n + 1):
        ai = a[i - 1]
        d1 = ai - ap
        curr[0] = prev[0] + d1 * d1 + nu + lam
        row_min = curr[0]
        for j in range(1, n + 1):
            # match: align (a_i, b_j) and their predecessors
            d1 = ai - b[j - 1]
            aprev = ap
            bp = b[j - 2] if j >= 2 else 0.0
            d2 = aprev - bp
            v = prev[j - 1] + d1 * d1 + d2 * d2 + 2.0 * nu * (fabs(<double> (i - j)))
            # delete in a
            d1 = ai - ap
            m = prev[j] + d1 * d1 + nu + lam
            if m < v:
                v = m
            # delete in b
            d1 = b[j - 1] - bp
            m = curr[j - 1] + d1 * d1 + nu + lam
            if m < v:
                v = m
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min >= cutoff:
            return INFINITY
        ap = ai
        tmp = prev
        prev = curr
        curr = tmp
    return prev[n]


def min_subsequence_dist(const double[::1] shapelet, const double[::1] series):
    """Min over offsets of mean squared difference to the z-normalized window."""
    cdef Py_ssize_t m = shapelet.shape[0]
    cdef Py_ssize_t n = series.shape[0]
    cdef Py_ssize_t o, k
    cdef double best = INFINITY
    cdef double s, ssq, mu, var, sd, acc, d, limit
    s = 0.0
    ssq = 0.0
    for k in range(m):
        s += series[k]
        ssq += series[k] * series[k]
    for o in range(n - m + 1):
        if o > 0:
            s += series[o + m - 1] - series[o - 1]
            ssq += series[o + m - 1] * series[o + m - 1] - series[o - 1] * series[o - 1]
        mu = s / m
        var = ssq / m - mu * mu
        sd = sqrt(var) if var > 0.0 else 0.0
        acc = 0.0
        limit = best * m
        if sd < 1e-8:
            for k in range(m):
                acc += shapelet[k] * shapelet[k]
                if acc >= limit:
                    break
        else:
            for k in range(m):
                d = shapelet[k] - (series[o + k] - mu) / sd
                acc += d * d
                if acc >= limit:
                    break
        if acc / m < best:
            best = acc / m
    return best
