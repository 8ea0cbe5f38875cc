"""tsckit: time series classification engine and benchmark harness."""

from .datasets import (
    Case,
    ResamplePair,
    TimeSeriesDataset,
    parse_ts_file,
    serialize_ts_file,
    stratified_resample,
)
from .distances import BACKEND, DistanceSpec, derivative_transform, distance, ee_parameter_grid
from .registry import REGISTERED_CLASSIFIERS, build_classifier

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Case",
    "DistanceSpec",
    "REGISTERED_CLASSIFIERS",
    "ResamplePair",
    "TimeSeriesDataset",
    "build_classifier",
    "derivative_transform",
    "distance",
    "ee_parameter_grid",
    "parse_ts_file",
    "serialize_ts_file",
    "stratified_resample",
]
