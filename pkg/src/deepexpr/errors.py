"""Exception vocabulary shared across the package.

Two roots matter to callers: :class:`DataError` for anything wrong with
inputs, files, labels, or shapes, and :class:`NumericalError` for failures
of the numerics themselves (divergence, singular systems). The CLI maps
them to distinct exit codes.
"""


class DataError(Exception):
    """Input, file, label, or shape problem."""


class NumericalError(Exception):
    """Numerical failure: divergent training, singular system, etc."""


class MissingFile(DataError):
    """Input path does not exist."""


class ParseError(DataError):
    """A cell failed to parse (non-numeric, negative, NaN, or ragged row)."""

    def __init__(self, message, row=None, col=None):
        if row is not None:
            where = f"row {row}" + (f", col {col}" if col is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.row = row
        self.col = col


class DuplicateId(DataError):
    """Sample or gene identifier appears more than once."""


class UnknownLabel(DataError):
    """Label not present in the vocabulary."""


class MissingLabels(DataError):
    """Operation requires labels but the dataset has none."""


class ClassTooSmall(DataError):
    """A class has too few samples for the requested operation."""


class EmptyDataset(DataError):
    """Dataset has no rows."""


class EmptyTrainingSet(DataError):
    """No training points supplied."""


class DimensionMismatch(DataError):
    """Array shapes do not line up with the model or each other."""


class BadDims(DataError):
    """Layer size list is invalid (non-positive or too short)."""


class BadSpec(DataError):
    """Generator or architecture spec violates its invariants."""


class BadHyperparams(DataError):
    """Hyperparameter outside its valid range."""


class BadShape(DataError):
    """Matrix has the wrong shape for this metric."""


class LabelOutOfRange(DataError):
    """Class id outside [0, n_classes)."""


class SpecMismatch(DataError):
    """Network structure does not match the spec it was supposedly built from."""


class EncoderNotFrozen(DataError):
    """Encoder layers must be frozen before a head is attached."""


class StaleActivationRecord(DataError):
    """Activation record does not match the network it is replayed against."""


class NonFiniteLoss(NumericalError):
    """Training loss became NaN or infinite; aborting."""


class SingularCovariance(NumericalError):
    """Pooled covariance is singular and regularization is disabled."""
