"""Exception types shared across the toolkit."""


class SpoterKitError(Exception):
    """Base class for all toolkit errors."""


class SchemaMismatchError(SpoterKitError):
    """Raw estimator output does not match the landmark map's declared arity."""


class EmptyInputError(SpoterKitError):
    """An operation that requires at least one frame received none."""


class FormatError(SpoterKitError):
    """A file does not conform to its documented format."""


class MissingSplitError(FormatError):
    """A dataset index entry lacks a train/validation/test tag."""


class VideoDecodeError(SpoterKitError):
    """A video file could not be opened or yielded no frames."""


class EstimatorUnavailableError(SpoterKitError):
    """The external pose-estimation backend is not installed."""


class ConfigError(SpoterKitError):
    """A configuration value is outside its documented domain."""


class CacheMissError(SpoterKitError):
    """A landmark cache entry is required but absent."""


class DimensionMismatchError(SpoterKitError):
    """Input dimensionality does not match the model configuration."""


class InvalidKError(SpoterKitError):
    """Requested top-k is outside [1, num_classes]."""


class VocabularyMismatchError(SpoterKitError):
    """A split contains labels outside the checkpoint's vocabulary."""


class NonFiniteLossError(SpoterKitError):
    """Training hit a NaN/inf loss; carries the offending sample id."""


class SpaceError(SpoterKitError):
    """A sweep search-space definition is invalid."""
