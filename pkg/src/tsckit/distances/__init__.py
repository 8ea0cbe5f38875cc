"""Elastic distance measures with a compiled core and interpreted fallback.

The kernel backend is chosen once at import time: the Cython extension when
it built, otherwise the pure-python twin. Set ``TSCKIT_DISTANCE_BACKEND=pure``
to force the fallback (used by the kernel benchmark and backend tests).
"""

import os

from . import _elastic_py

_forced = os.environ.get("TSCKIT_DISTANCE_BACKEND", "").lower()
kernels = None
if _forced not in ("py", "pure", "python"):
    try:
        from . import _elastic_c as kernels
    except ImportError:
        kernels = None
if kernels is None:
    kernels = _elastic_py

BACKEND = kernels.BACKEND_NAME

from .api import (  # noqa: E402
    MEASURES,
    TUNABLE_MEASURES,
    DistanceSpec,
    derivative_transform,
    distance,
)
from .grids import ParameterGrid, ee_parameter_grid  # noqa: E402

__all__ = [
    "BACKEND",
    "DistanceSpec",
    "MEASURES",
    "ParameterGrid",
    "TUNABLE_MEASURES",
    "derivative_transform",
    "distance",
    "ee_parameter_grid",
    "kernels",
]
