"""Exception types shared across the package."""


class LiamLabError(Exception):
    """Base class for all package errors."""


class DimensionError(LiamLabError, ValueError):
    """Operand shapes or layout lengths do not conform."""


class NumericError(LiamLabError, ArithmeticError):
    """Non-finite or otherwise unusable numeric values."""


class ConfigError(LiamLabError, ValueError):
    """Invalid run or environment configuration."""


class UsageError(LiamLabError, RuntimeError):
    """An API was called outside its contract (wrong order, exhausted state)."""


class CheckpointError(LiamLabError):
    """Base class for checkpoint persistence failures."""


class CorruptionError(CheckpointError):
    """Checkpoint payload does not match its manifest checksums."""


class VersionError(CheckpointError):
    """Checkpoint was written by an unsupported format version."""
