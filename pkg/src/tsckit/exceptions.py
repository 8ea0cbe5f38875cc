"""Exception types raised across the toolkit."""


class TsckitError(Exception):
    """Base class for all toolkit errors."""


# dataset parsing / resampling
class MalformedHeader(TsckitError):
    pass


class LengthMismatch(TsckitError):
    pass


class UnknownLabel(TsckitError):
    pass


class NonNumericValue(TsckitError):
    pass


class MultivariateUnsupported(TsckitError):
    pass


class IncompatibleDatasets(TsckitError):
    pass


# numeric kernels
class IntervalTooShort(TsckitError):
    pass


class SeriesTooShort(TsckitError):
    pass


# tree learners
class EmptyTrainingSet(TsckitError):
    pass


class DimensionMismatch(TsckitError):
    pass


class InconsistentDimensions(TsckitError):
    pass


# interval ensembles
class IntervalInfeasible(TsckitError):
    pass


# dictionary classifiers
class UnfittedBreakpoints(TsckitError):
    pass


class WindowTooLong(TsckitError):
    pass


class NoViableParameters(TsckitError):
    pass


# shapelets
class ShapeletTooLong(TsckitError):
    pass


class DegenerateLabels(TsckitError):
    pass


class ContractTooSmall(TsckitError):
    pass


# distance classifiers
class GridEmpty(TsckitError):
    pass


class NotTunable(TsckitError):
    pass


class SingleClassNode(TsckitError):
    pass


# evaluation
class EmptyResults(TsckitError):
    pass


class TooFewSamples(TsckitError):
    pass


class DatasetNotFound(TsckitError):
    pass


class UnknownClassifier(TsckitError):
    pass
