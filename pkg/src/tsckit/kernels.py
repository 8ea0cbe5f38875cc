"""Summary statistics, autocorrelation, power spectrum, z-normalization.

Population (n-denominator) standard deviation everywhere. Zero-variance
inputs never raise: acf and znormalize return zeros, slope/std return 0.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import IntervalTooShort


@dataclass(frozen=True)
class IntervalFeatures:
    mean: float
    std: float
    slope: float


def interval_mean(x):
    x = np.asarray(x, dtype=np.float64)
    return float(x.mean())


def interval_std(x):
    x = np.asarray(x, dtype=np.float64)
    if np.ptp(x) == 0.0:
        return 0.0
    return float(x.std())


def interval_slope(x):
    """Ordinary least-squares slope of x against positions 0..n-1."""
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    if np.ptp(x) == 0.0:
        return 0.0
    positions = np.arange(n, dtype=np.float64) - (n - 1) / 2.0
    return float(np.dot(x - x.mean(), positions) / np.dot(positions, positions))


def interval_summary(x):
    """Mean, population std and OLS slope of one interval (length >= 2)."""
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 2:
        raise IntervalTooShort("interval_summary needs at least 2 points")
    return IntervalFeatures(interval_mean(x), interval_std(x), interval_slope(x))


def acf_coefs(x, maxlag=100):
    """Autocorrelations at lags 1..min(n-1, maxlag).

    Lag-k coefficient is sum((x_t - mean)(x_{t+k} - mean)) / sum((x_t - mean)^2);
    a constant series yields all zeros rather than raising.
    """
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    if n < 2:
        raise IntervalTooShort("acf_coefs needs at least 2 points")
    nlags = min(n - 1, int(maxlag))
    if np.ptp(x) == 0.0:
        return np.zeros(nlags)
    centered = x - x.mean()
    denom = float(np.dot(centered, centered))
    if denom == 0.0:
        return np.zeros(nlags)
    out = np.empty(nlags)
    for k in range(1, nlags + 1):
        out[k - 1] = np.dot(centered[:-k], centered[k:]) / denom
    return out


def power_spectrum(x):
    """Squared DFT magnitudes for bins 0 .. floor(n/2)-1."""
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 2:
        raise IntervalTooShort("power_spectrum needs at least 2 points")
    f = np.fft.fft(x)
    ps = f.real * f.real + f.imag * f.imag
    return ps[: len(x) // 2]


def znormalize(x):
    """(x - mean) / population std; all zeros when std < 1e-8."""
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 1:
        raise IntervalTooShort("znormalize needs at least 1 point")
    sd = x.std()
    if sd < 1e-8:
        return np.zeros(len(x))
    return (x - x.mean()) / sd
