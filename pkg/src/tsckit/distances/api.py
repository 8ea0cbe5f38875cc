"""Distance specs, parameter validation, and the dispatch front-end."""

import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from ..exceptions import LengthMismatch, SeriesTooShort
from . import kernels

MEASURES = ("euclidean", "dtw", "ddtw", "wdtw", "wddtw", "lcss", "erp", "msm", "twed")

# exactly these parameter keys must be present for each measure
_PARAM_KEYS = {
    "euclidean": frozenset(),
    "dtw": frozenset({"w"}),
    "ddtw": frozenset({"w"}),
    "wdtw": frozenset({"g"}),
    "wddtw": frozenset({"g"}),
    "lcss": frozenset({"epsilon", "delta"}),
    "erp": frozenset({"g", "w"}),
    "msm": frozenset({"c"}),
    "twed": frozenset({"nu", "lambda"}),
}

TUNABLE_MEASURES = ("dtw", "ddtw", "wdtw", "wddtw", "lcss", "erp", "msm", "twed")


def _check_params(measure, params):
    expected = _PARAM_KEYS[measure]
    got = frozenset(params)
    if got != expected:
        raise ValueError(
            f"{measure} takes parameters {sorted(expected)}, got {sorted(got)}"
        )
    if "w" in params and not 0.0 <= params["w"] <= 1.0:
        raise ValueError("window fraction w must lie in [0, 1]")
    if "g" in params and params["g"] < 0.0:
        raise ValueError("g must be >= 0")
    if "epsilon" in params and params["epsilon"] <= 0.0:
        raise ValueError("epsilon must be > 0")
    if "delta" in params and (params["delta"] < 0 or params["delta"] != int(params["delta"])):
        raise ValueError("delta must be a non-negative integer")
    if "c" in params and params["c"] <= 0.0:
        raise ValueError("c must be > 0")
    if "nu" in params and params["nu"] <= 0.0:
        raise ValueError("nu must be > 0")
    if "lambda" in params and params["lambda"] < 0.0:
        raise ValueError("lambda must be >= 0")


@dataclass(frozen=True)
class DistanceSpec:
    """A measure name plus exactly the parameters that measure takes."""

    measure: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        _check_params(self.measure, self.params)
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    def __hash__(self):
        return hash((self.measure, tuple(sorted(self.params.items()))))

    def describe(self):
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.measure}({inner})"


def derivative_transform(x):
    """Keogh first-order derivative; output length n-2."""
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 3:
        raise SeriesTooShort("derivative_transform needs at least 3 points")
    return ((x[1:-1] - x[:-2]) + (x[2:] - x[:-2]) / 2.0) / 2.0


def _band(w, n):
    return min(n, int(math.ceil(w * n)))


def distance(a, b, spec, cutoff=math.inf):
    """Distance between equal-length series under ``spec``.

    ``cutoff`` enables early abandoning: any value >= cutoff may be
    returned as +inf, which never changes an argmin against cutoff.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if len(a) != len(b):
        raise LengthMismatch(f"series lengths differ: {len(a)} vs {len(b)}")
    measure = spec.measure
    p = spec.params
    if measure == "euclidean":
        sq_cut = cutoff * cutoff if cutoff < math.inf else math.inf
        return math.sqrt(kernels.sq_euclidean(a, b, sq_cut))
    if measure in ("ddtw", "wddtw"):
        a = derivative_transform(a)
        b = derivative_transform(b)
        measure = "dtw" if spec.measure == "ddtw" else "wdtw"
    n = len(a)
    if measure == "dtw":
        return kernels.dtw(a, b, _band(p["w"], n), cutoff)
    if measure == "wdtw":
        return kernels.wdtw(a, b, p["g"], cutoff)
    if measure == "lcss":
        return kernels.lcss(a, b, p["epsilon"], int(p["delta"]))
    if measure == "erp":
        return kernels.erp(a, b, p["g"], _band(p["w"], n), cutoff)
    if measure == "msm":
        return kernels.msm(a, b, p["c"], cutoff)
    if measure == "twed":
        return kernels.twed(a, b, p["nu"], p["lambda"], cutoff)
    raise AssertionError(f"unhandled measure {measure}")
