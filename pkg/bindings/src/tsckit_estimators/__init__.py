"""Estimator-protocol wrappers around the tsckit classifiers.

Thin by design: every numeric path lives in the core package; the wrapper
only converts between nested-sequence containers and the core dataset
model and delegates fit/predict to the registered classifier runners.
"""

from .estimators import BoundEstimator, NotFitted, RaggedInput, convert_dataset

__all__ = ["BoundEstimator", "NotFitted", "RaggedInput", "convert_dataset"]
