"""Exception types shared across the package."""


class NNInteractError(Exception):
    """Base class for all package errors."""


class ConfigError(NNInteractError):
    """Invalid configuration or argument."""


class DataError(NNInteractError):
    """Invalid, missing, or non-finite data."""


class NetworkShapeError(NNInteractError):
    """Inconsistent network/input dimensions."""


class ModelFileError(NNInteractError):
    """Model file cannot be parsed or is internally inconsistent."""


class TrainingDivergedError(NNInteractError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch, message=None):
        self.epoch = epoch
        super().__init__(message or f"training diverged at epoch {epoch}")


class MetricError(NNInteractError):
    """A metric is undefined for the given inputs."""
