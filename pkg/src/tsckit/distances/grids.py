"""The 100-option hyperparameter grids used for 1NN tuning."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import NotTunable
from .api import TUNABLE_MEASURES

GRID_SIZE = 100

TWED_NU_VALUES = (0.00001, 0.0001, 0.001, 0.01, 0.1, 1.0)


@dataclass(frozen=True)
class ParameterGrid:
    measure: str
    options: tuple

    def __post_init__(self):
        object.__setattr__(self, "options", tuple(self.options))

    def __len__(self):
        return len(self.options)


def ee_parameter_grid(measure, series_length=None, pooled_std=None):
    """100 parameter options for a tunable measure.

    lcss and erp grids are data-dependent: they need the pooled train
    standard deviation, and lcss additionally the series length.
    """
    if measure not in TUNABLE_MEASURES:
        raise NotTunable(f"{measure} has no parameter grid")

    if measure in ("dtw", "ddtw"):
        options = [{"w": x / 100} for x in range(GRID_SIZE)]
    elif measure in ("wdtw", "wddtw"):
        options = [{"g": x / 100} for x in range(GRID_SIZE)]
    elif measure == "lcss":
        sigma = _require_sigma(measure, pooled_std)
        if series_length is None:
            raise ValueError("lcss grid needs series_length")
        epsilons = np.linspace(sigma / 4, sigma, 10)
        deltas = np.round(np.linspace(0, series_length / 4, 10)).astype(int)
        options = [
            {"epsilon": float(e), "delta": int(d)} for e in epsilons for d in deltas
        ]
    elif measure == "erp":
        sigma = _require_sigma(measure, pooled_std)
        gs = np.linspace(sigma / 5, sigma, 10)
        ws = np.linspace(0.0, 0.25, 10)
        options = [{"g": float(g), "w": float(w)} for g in gs for w in ws]
    elif measure == "msm":
        options = [{"c": float(c)} for c in np.logspace(-2, 2, GRID_SIZE)]
    elif measure == "twed":
        lambdas = np.linspace(0.0, 0.1, 10)
        combos = [
            {"nu": nu, "lambda": float(lam)} for nu in TWED_NU_VALUES for lam in lambdas
        ]
        # 6 x 10 cross product cycled out to the fixed grid size
        options = [combos[i % len(combos)] for i in range(GRID_SIZE)]
    else:
        raise AssertionError(measure)
    return ParameterGrid(measure, tuple(options))


def _require_sigma(measure, pooled_std):
    if pooled_std is None:
        raise ValueError(f"{measure} grid needs pooled_std")
    # degenerate all-constant training data: keep epsilon/g positive
    return max(float(pooled_std), 1e-8)
